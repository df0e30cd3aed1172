#include "polytree/build_tree.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>

#include "polytree/errors.hpp"

namespace polytree {

struct BuildContext {
  BuildContext(const Polynomial& poly, const BuildOptions& o)
      : f(poly), ev(poly), data(escape_data(poly)), opts(o) {}

  Polynomial f;
  EscapeEvaluator ev;
  EscapeData data;
  BuildOptions opts;
  SeedSet seeds;
  std::vector<double> h;      // h_0 = M > h_1 > ... > h_L, raw
  std::vector<double> s;      // s_i = (h_i + h_{i+1}) / 2
  std::vector<int> img;       // sublevel index of d * s_i, -1 when on the trunk
  std::vector<double> trunk;  // raw trunk vertex heights above M, ascending
  int n_seed = 1;             // depth of the seed set
};

namespace {

constexpr double kTie = 1e-8;

int generation_of_height(double raw, double M, int d) {
  int n = 1;
  double x = raw * d;
  while (!(x > M * (1.0 + 1e-12))) {
    x *= d;
    ++n;
  }
  return n;
}

BigInt orbit_degree(const Tree& tree, int e, int n) {
  BigInt prod = 1;
  int cur = e;
  for (int j = 0; j < n; ++j) {
    const auto& edge = tree.edge(cur);
    if (edge.trunk) {
      for (int r = j; r < n; ++r) prod *= tree.d;
      return prod;
    }
    prod *= edge.degree;
    cur = edge.image;
    if (cur < 0) throw TruncationExceeded("edge orbit leaves the truncation");
  }
  return prod;
}

int trunk_edge_at(const Tree& tree, double raw) {
  const auto& c = *tree.context;
  int u = 0;
  for (std::size_t i = 0; i < c.trunk.size(); ++i)
    if (c.trunk[i] <= raw * (1.0 + kTie)) u = static_cast<int>(i) + 1;
  return u;
}

bool has_seed(const TreeEdge& e, std::uint32_t seed) {
  return std::binary_search(e.seeds.begin(), e.seeds.end(), seed);
}

int ensure_bottom(Tree& tree, int e) {
  if (tree.edges[static_cast<std::size_t>(e)].bottom >= 0) return tree.edges[static_cast<std::size_t>(e)].bottom;
  TreeVertex v;
  v.id = static_cast<int>(tree.vertices.size());
  v.height = tree.edges[static_cast<std::size_t>(e)].bottom_height;
  v.parent_edge = e;
  v.depth = tree.edges[static_cast<std::size_t>(e)].level + 1;
  tree.vertices.push_back(v);
  tree.edges[static_cast<std::size_t>(e)].bottom = v.id;
  return v.id;
}

}  // namespace

int level_count(const Tree& tree) { return static_cast<int>(tree.context->s.size()); }
double level_value(const Tree& tree, int level) { return tree.context->s.at(static_cast<std::size_t>(level)); }
double vertex_height_raw(const Tree& tree, int index) { return tree.context->h.at(static_cast<std::size_t>(index)); }
const Polynomial& tree_polynomial(const Tree& tree) { return tree.context->f; }
const SeedSet& tree_seeds(const Tree& tree) { return tree.context->seeds; }
const EscapeEvaluator& tree_evaluator(const Tree& tree) { return tree.context->ev; }
const EscapeData& tree_escape_data(const Tree& tree) { return tree.context->data; }

FillResult edge_fill(const Tree& tree, int e) {
  const auto& edge = tree.edge(e);
  if (edge.trunk) throw InvalidArgument("treebuild", "trunk edges have no bounded region");
  return flood_fill(tree.context->ev, edge.level_value, edge.window, edge.sample);
}

void expand_vertex(Tree& tree, int v) {
  if (tree.vertex(v).expanded) return;
  const int j = tree.vertex(v).depth;
  const BuildContext& c = *tree.context;
  if (j < 0 || j >= static_cast<int>(c.s.size()))
    throw TruncationExceeded("vertex depth " + std::to_string(j) + " is beyond the built levels");
  tree.vertices[static_cast<std::size_t>(v)].expanded = true;

  std::vector<std::uint32_t> idx;
  Window window;
  if (v == tree.base) {
    idx.resize(c.seeds.points.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<std::uint32_t>(i);
    window = enclosing_window(c.seeds, idx, c.opts.resolution.cells);
  } else {
    const auto& parent = tree.edge(tree.vertex(v).parent_edge);
    idx = parent.seeds;
    window = parent.window;
  }

  const double level = c.s[static_cast<std::size_t>(j)];
  std::vector<int> images;
  auto accept = [&](const SublevelComponent& comp) {
    int degree = 1;
    for (const auto& cp : comp.critical) degree += cp.multiplicity;
    int image = -1;
    const int target = c.img[static_cast<std::size_t>(j)];
    if (target < 0) {
      image = trunk_edge_at(tree, tree.d * level);
    } else {
      image = component_of_seed(tree, target, static_cast<std::uint32_t>(c.seeds.image(comp.seeds.front())));
      const auto& img_edge = tree.edge(image);
      for (auto x : comp.seeds)
        if (!has_seed(img_edge, static_cast<std::uint32_t>(c.seeds.image(x)))) return false;
    }
    const BigInt expected = degree * orbit_degree(tree, image, c.n_seed - 1);
    if (BigInt(comp.seeds.size()) != expected) return false;
    images.push_back(image);
    return true;
  };
  const auto comps =
      partition_seeds(c.ev, c.seeds, idx, c.data.critical, level, window, c.opts.resolution, accept, c.opts.focus_points);

  const int N = generation_of_height(level, c.h[0], tree.d);
  BigInt dN = 1;
  for (int i = 0; i < N; ++i) dN *= tree.d;
  for (std::size_t k = 0; k < comps.size(); ++k) {
    const auto& comp = comps[k];
    TreeEdge e;
    e.id = static_cast<int>(tree.edges.size());
    e.top = v;
    e.top_height = c.h[static_cast<std::size_t>(j)] * tree.scale;
    e.bottom_height = c.h[static_cast<std::size_t>(j) + 1] * tree.scale;
    e.degree = 1;
    for (const auto& cp : comp.critical) e.degree += cp.multiplicity;
    e.generation = N;
    e.image = images[k];
    e.level = j;
    e.level_value = level;
    e.sample = comp.sample;
    e.window = comp.window;
    e.seeds = comp.seeds;
    e.critical = comp.critical;
    e.focus = !comp.markers.empty();
    tree.edges.push_back(e);
    tree.vertices[static_cast<std::size_t>(v)].child_edges.push_back(e.id);
    tree.edges.back().mass = Rational(orbit_degree(tree, e.id, N), dN);
  }
}

int component_of_seed(Tree& tree, int level, std::uint32_t seed) {
  int v = tree.base;
  for (int l = 0;; ++l) {
    expand_vertex(tree, v);
    int found = -1;
    for (int ch : tree.vertex(v).child_edges)
      if (has_seed(tree.edge(ch), seed)) found = ch;
    if (found < 0) throw ResolutionExhausted("seed " + std::to_string(seed) + " was not assigned to a component");
    if (l == level) return found;
    v = ensure_bottom(tree, found);
  }
}

std::pair<Tree, TreeMeasure> build_tree(const Polynomial& f, int depth, const ResolutionSpec& res) {
  BuildOptions o;
  o.depth = depth;
  o.resolution = res;
  return build_tree(f, o);
}

std::pair<Tree, TreeMeasure> build_tree(const Polynomial& f, const BuildOptions& opts) {
  if (opts.depth < 0) throw InvalidArgument("treebuild", "depth must be nonnegative");
  auto ctx = std::make_shared<BuildContext>(f, opts);
  const double M = ctx->data.max_rate;
  if (!(M > 1e-10)) throw ConnectedJuliaSet("M(f) = " + std::to_string(M) + ": the Julia set is connected");
  const int d = f.degree();
  const int L = std::max(opts.depth, opts.focus_depth);
  const int K = std::max(opts.depth, 1);

  // Grand-orbit heights: every escaping critical rate moved into (M/d, M].
  std::vector<double> base_rates;
  for (double g : ctx->data.critical_rates) {
    if (!(g > 1e-9 * M)) continue;
    while (g * d <= M * (1.0 + kTie)) g *= d;
    base_rates.push_back(g);
  }
  std::vector<double> below, above;
  for (double g : base_rates) {
    double x = g;
    for (int m = 0; m <= L + 1; ++m, x /= d) below.push_back(x);
    x = g;
    for (int m = 1; m <= K; ++m) {
      x *= d;
      if (x > M * (1.0 + kTie) && x <= std::pow(d, K) * M * (1.0 + kTie)) above.push_back(x);
    }
  }
  auto merge = [M](std::vector<double>& v) {
    std::vector<double> out;
    for (double x : v)
      if (out.empty() || std::abs(out.back() - x) > kTie * M) out.push_back(x);
    v = std::move(out);
  };
  std::sort(below.begin(), below.end(), std::greater<>());
  merge(below);
  std::sort(above.begin(), above.end());
  merge(above);
  below.resize(static_cast<std::size_t>(L) + 1);
  below[0] = M;
  ctx->h = below;
  ctx->trunk = above;
  for (int i = 0; i < L; ++i) {
    ctx->s.push_back(0.5 * (ctx->h[static_cast<std::size_t>(i)] + ctx->h[static_cast<std::size_t>(i) + 1]));
    const double up = d * ctx->h[static_cast<std::size_t>(i) + 1];
    if (up >= M * (1.0 - kTie)) {
      ctx->img.push_back(-1);
      continue;
    }
    int best = 0;
    for (int j = 0; j <= i; ++j)
      if (std::abs(ctx->h[static_cast<std::size_t>(j)] - d * ctx->h[static_cast<std::size_t>(i)]) <
          std::abs(ctx->h[static_cast<std::size_t>(best)] - d * ctx->h[static_cast<std::size_t>(i)]))
        best = j;
    ctx->img.push_back(best);
  }
  if (L > 0) {
    int n = 1;
    while (!(std::pow(d, n) * ctx->s.back() > M)) ++n;
    ctx->n_seed = n;
  }
  ctx->seeds = build_seeds(f, L > 0 ? ctx->n_seed : 0);

  Tree tree;
  tree.d = d;
  tree.M = M;
  tree.depth = opts.depth;
  tree.context = ctx;

  // Trunk: v0 = vertex 0, trunk vertices 1..T; trunk edge t sits on vertex t.
  const int T = static_cast<int>(ctx->trunk.size());
  for (int t = 0; t <= T; ++t) {
    TreeVertex v;
    v.id = t;
    v.height = t == 0 ? M : ctx->trunk[static_cast<std::size_t>(t) - 1];
    v.parent_edge = t;
    v.depth = -t;
    v.expanded = t > 0;
    if (t > 0) v.child_edges.push_back(t - 1);
    tree.vertices.push_back(v);
  }
  for (int t = 0; t <= T; ++t) {
    TreeEdge e;
    e.id = t;
    e.bottom = t;
    e.top = t < T ? t + 1 : -1;
    e.bottom_height = tree.vertices[static_cast<std::size_t>(t)].height;
    e.top_height = t < T ? tree.vertices[static_cast<std::size_t>(t) + 1].height : std::numeric_limits<double>::infinity();
    e.degree = d;
    e.generation = 1;
    e.trunk = true;
    e.mass = 1;
    tree.edges.push_back(e);
  }
  for (int t = 0; t <= T; ++t) tree.edges[static_cast<std::size_t>(t)].image = trunk_edge_at(tree, d * tree.edges[static_cast<std::size_t>(t)].bottom_height);
  tree.top_edge = T;
  tree.base = 0;

  if (L > 0) {
    expand_vertex(tree, tree.base);
    std::deque<int> queue(tree.vertex(tree.base).child_edges.begin(), tree.vertex(tree.base).child_edges.end());
    while (!queue.empty()) {
      const int e = queue.front();
      queue.pop_front();
      const int i = tree.edge(e).level;
      const bool focus = tree.edge(e).focus;
      if (i < opts.depth || (focus && i < opts.focus_depth)) {
        const int v = ensure_bottom(tree, e);
        if (i + 1 < opts.depth || (focus && i + 1 < opts.focus_depth)) {
          expand_vertex(tree, v);
          for (int ch : tree.vertex(v).child_edges) queue.push_back(ch);
        }
      }
    }
  }
  TreeMeasure measure = measure_of(tree);
  return {std::move(tree), std::move(measure)};
}

}  // namespace polytree
