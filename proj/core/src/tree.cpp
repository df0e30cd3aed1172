#include "polytree/tree.hpp"

#include <algorithm>
#include <cmath>

#include "polytree/errors.hpp"

namespace polytree {

namespace {

constexpr double kHeightTol = 1e-9;

bool same_height(double a, double b) { return std::abs(a - b) <= kHeightTol * std::max(std::abs(a), std::abs(b)); }

}  // namespace

int Tree::parent(int e) const {
  const int top = edge(e).top;
  return top < 0 ? -1 : vertex(top).parent_edge;
}

TreeMeasure measure_of(const Tree& tree) {
  TreeMeasure m;
  m.mass.reserve(tree.edges.size());
  for (const auto& e : tree.edges) m.mass.push_back(e.mass);
  return m;
}

TreePoint tree_map(const Tree& tree, const TreePoint& p) {
  const double target = tree.d * p.height;
  switch (p.kind) {
    case TreePoint::Kind::JuliaEnd: return p;
    case TreePoint::Kind::Vertex: {
      const int image = tree.edge(tree.vertex(p.id).parent_edge).image;
      if (image < 0) throw TruncationExceeded("vertex image lies beyond the truncation");
      const int b = tree.edge(image).bottom;
      if (b < 0 || !same_height(tree.vertex(b).height, target))
        throw TruncationExceeded("vertex image lies beyond the truncation");
      return TreePoint::at_vertex(tree, b);
    }
    case TreePoint::Kind::Edge: {
      const int image = tree.edge(p.id).image;
      if (image < 0) throw TruncationExceeded("edge image lies beyond the truncation");
      return TreePoint::on_edge(image, target);
    }
    case TreePoint::Kind::Truncated: {
      const int image = tree.edge(p.id).image;
      if (image < 0) throw TruncationExceeded("edge image lies beyond the truncation");
      const auto& e = tree.edge(image);
      if (target > e.bottom_height && target < e.top_height) return TreePoint::on_edge(image, target);
      return {TreePoint::Kind::Truncated, image, target};
    }
  }
  return p;
}

BigInt iterate_degree(const Tree& tree, int e, int n) {
  if (n < 0) throw InvalidArgument("treebuild", "iterate order must be nonnegative");
  BigInt prod = 1;
  int cur = e;
  for (int j = 0; j < n; ++j) {
    if (cur < 0) throw TruncationExceeded("edge orbit leaves the truncation");
    const auto& edge = tree.edge(cur);
    if (edge.trunk) {
      // Every trunk edge, built or not, has degree d.
      for (int r = j; r < n; ++r) prod *= tree.d;
      return prod;
    }
    prod *= edge.degree;
    cur = edge.image;
  }
  return prod;
}

std::optional<int> generation(const Tree& tree, const TreePoint& p) {
  if (p.kind == TreePoint::Kind::JuliaEnd || !(p.height > 0.0)) return std::nullopt;
  const double top = tree.base_height() * (1.0 + 1e-12);
  int n = 1;
  double h = p.height * tree.d;
  while (!(h > top)) {
    h *= tree.d;
    ++n;
  }
  return n;
}

Rational edge_mass(const Tree& /*tree*/, const TreeMeasure& measure, int e) { return measure[e]; }

std::pair<Tree, TreeMeasure> normalize(const Tree& tree, const TreeMeasure& measure) {
  Tree out = tree;
  const double factor = 1.0 / tree.base_height();
  for (auto& v : out.vertices) v.height *= factor;
  for (auto& e : out.edges) {
    e.bottom_height *= factor;
    if (std::isfinite(e.top_height)) e.top_height *= factor;
  }
  out.scale *= factor;
  out.normalized = true;
  // Exactly 1 after the first pass; guards against drift on repeats.
  out.vertices[static_cast<std::size_t>(out.base)].height = 1.0;
  return {std::move(out), measure};
}

std::vector<Rational> weights_at(const Tree& tree, const TreeMeasure& measure, const TreePoint& p, double r) {
  if (!(r > 0.0)) throw InvalidArgument("treebuild", "radius must be positive");
  std::vector<Rational> out;
  if (p.kind == TreePoint::Kind::Vertex) {
    const auto& v = tree.vertex(p.id);
    if (!v.expanded) throw TruncationExceeded("the children of this vertex were not built");
    const auto& up = tree.edge(v.parent_edge);
    if (up.top_height - v.height <= 2.0 * r) throw VertexInBall("the vertex above lies within 2r");
    Rational below = 0;
    for (int c : v.child_edges) {
      const auto& e = tree.edge(c);
      if (v.height - e.bottom_height <= 2.0 * r) throw VertexInBall("a vertex below lies within 2r");
      out.push_back(measure[c]);
      below += measure[c];
    }
    out.push_back(1 - below);
  } else if (p.kind == TreePoint::Kind::Edge) {
    const auto& e = tree.edge(p.id);
    if (e.top_height - p.height <= 2.0 * r || p.height - e.bottom_height <= 2.0 * r)
      throw VertexInBall("an endpoint of the edge lies within 2r");
    out.push_back(measure[p.id]);
    out.push_back(1 - measure[p.id]);
  } else {
    throw InvalidArgument("treebuild", "weights need a vertex or edge point");
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<int> height_cut(const Tree& tree, double t) {
  std::vector<int> out;
  for (const auto& e : tree.edges)
    if (e.bottom_height < t && t < e.top_height) out.push_back(e.id);
  return out;
}

std::vector<int> path_to_top(const Tree& tree, int e) {
  std::vector<int> out;
  for (int cur = e; cur >= 0; cur = tree.parent(cur)) out.push_back(cur);
  return out;
}

TreePoint point_above(const Tree& tree, int e, double h) {
  const auto& first = tree.edge(e);
  if (h < first.bottom_height && !same_height(h, first.bottom_height)) return {TreePoint::Kind::Truncated, e, h};
  for (int cur : path_to_top(tree, e)) {
    const auto& edge = tree.edge(cur);
    if (same_height(h, edge.bottom_height)) {
      if (edge.bottom >= 0) return TreePoint::at_vertex(tree, edge.bottom);
      return {TreePoint::Kind::Truncated, cur, h};
    }
    if (h < edge.top_height && !same_height(h, edge.top_height)) return TreePoint::on_edge(cur, h);
  }
  return TreePoint::on_edge(tree.top_edge, h);
}

std::vector<int> branch_of_seed(const Tree& tree, std::uint32_t seed) {
  std::vector<int> out;
  int v = tree.base;
  while (v >= 0) {
    int next = -1;
    for (int c : tree.vertex(v).child_edges) {
      const auto& s = tree.edge(c).seeds;
      if (std::binary_search(s.begin(), s.end(), seed)) next = c;
    }
    if (next < 0) break;
    out.push_back(next);
    v = tree.edge(next).bottom;
  }
  return out;
}

std::vector<int> subtree_edges(const Tree& tree, int v) {
  std::vector<int> out;
  std::vector<int> stack{v};
  while (!stack.empty()) {
    const int u = stack.back();
    stack.pop_back();
    const auto& kids = tree.vertex(u).child_edges;
    for (auto it = kids.rbegin(); it != kids.rend(); ++it) {
      if (tree.edge(*it).trunk) continue;
      out.push_back(*it);
      if (tree.edge(*it).bottom >= 0) stack.push_back(tree.edge(*it).bottom);
    }
  }
  return out;
}

}  // namespace polytree
