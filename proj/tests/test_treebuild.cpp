#include <gtest/gtest.h>

#include <map>
#include <random>

#include "polytree/build_tree.hpp"
#include "polytree/errors.hpp"
#include "polytree/export.hpp"
#include "polytree/isomorphism.hpp"
#include "polytree/pointed.hpp"
#include "support/oracles.hpp"

using namespace polytree;

namespace {

Rational pow_inv(int d, int n) {
  BigInt p = 1;
  for (int i = 0; i < n; ++i) p *= d;
  return Rational(1) / Rational(p);
}

std::vector<int> below_base(const Tree& t) {
  std::vector<int> out;
  for (const auto& e : t.edges)
    if (!e.trunk) out.push_back(e.id);
  return out;
}

// Random polynomial of degree d whose critical points all escape.
Polynomial random_escaping(std::mt19937& rng, int d) {
  std::normal_distribution<double> g(0.0, 1.0);
  for (;;) {
    std::vector<Complex> high{Complex(1.0 + std::abs(g(rng)), g(rng))};
    for (int i = 1; i <= d; ++i) high.emplace_back(3.0 * g(rng), 3.0 * g(rng));
    const Polynomial f = Polynomial::from_high(high);
    const EscapeData data = escape_data(f);
    bool all = true;
    for (double r : data.critical_rates) all = all && r > 0.05 * data.max_rate && r > 0.05;
    if (all) return f;
  }
}

}  // namespace

TEST(Sublevel, FloodFillMatchesFullGridOracle) {
  const Polynomial f = parse_polynomial("1,0,-6");
  const EscapeEvaluator ev(f);
  for (double level : {0.3, 0.6, 1.0}) {
    Window w{Complex(0.0, 0.0), 4.0, 128};
    // Repelling fixed point 3 and its preimage -3 lie in the Julia set.
    for (Complex start : {Complex(3.0, 0.0), Complex(-3.0, 0.0)}) {
      const FillResult fill = flood_fill(ev, level, w, start);
      const oracle::GridFill ref = oracle::brute_fill(f, level, w.center, w.half, w.cells, start);
      int diff = 0;
      for (int iy = 0; iy < w.cells; ++iy)
        for (int ix = 0; ix < w.cells; ++ix)
          diff += fill.cell(ix, iy) != (ref.mask[static_cast<std::size_t>(iy) * w.cells + ix] != 0);
      EXPECT_LE(diff, std::max(2, ref.count / 200)) << "level " << level;
      EXPECT_GT(ref.count, 0);
    }
  }
}

TEST(Sublevel, ComponentCounts) {
  const Polynomial f = parse_polynomial("1,0,-6");
  const double M = max_escape_rate(f);
  EXPECT_EQ(sublevel_components(f, 1.5 * M).size(), 1u);
  EXPECT_EQ(sublevel_components(f, 0.75 * M).size(), 2u);
  EXPECT_EQ(sublevel_components(f, 0.4 * M).size(), 4u);
}

TEST(Tree, QuadraticGoldenTree) {
  const Polynomial f = parse_polynomial("1,0,-6");
  auto [tree, measure] = build_tree(f, 4);
  const double M = tree.M;
  EXPECT_NEAR(M, 0.849462752696550, 1e-10);
  std::map<int, int> per_level;
  for (int e : below_base(tree)) {
    const auto& edge = tree.edge(e);
    EXPECT_EQ(edge.degree, 1);
    EXPECT_EQ(measure[e], pow_inv(2, edge.generation));
    // Measure bound m(e) <= ((d-1)/d)^N(e), an equality when d = 2.
    Rational bound = 1;
    for (int k = 0; k < edge.generation; ++k) bound *= Rational(1, 2);
    EXPECT_EQ(measure[e], bound);
    EXPECT_NEAR(edge.bottom_height, M / std::pow(2.0, edge.level + 1), 1e-12);
    per_level[edge.level]++;
  }
  for (int k = 0; k < 4; ++k) EXPECT_EQ(per_level[k], 1 << (k + 1));
  for (const auto& v : tree.vertices)
    if (v.depth >= 0 && v.depth < 4) EXPECT_EQ(v.valence(), 3) << "vertex " << v.id;
}

TEST(Tree, CubicExampleDegreesAndMasses) {
  for (double eps : {1e-2, 1e-3}) {
    const Polynomial f = Polynomial::from_high({eps, 1, 0, 0});
    auto [tree, measure] = build_tree(f, 1);
    std::vector<std::pair<int, Rational>> gen1;
    for (int c : tree.vertex(tree.base).child_edges) gen1.push_back({tree.edge(c).degree, measure[c]});
    std::sort(gen1.begin(), gen1.end());
    ASSERT_EQ(gen1.size(), 2u);
    EXPECT_EQ(gen1[0], std::make_pair(1, Rational(1, 3)));
    EXPECT_EQ(gen1[1], std::make_pair(2, Rational(2, 3)));
  }
}

TEST(Tree, CubicValenceRecursion) {
  for (double eps : {1e-2, 1e-3}) {
    const Polynomial f = Polynomial::from_high({eps, 1, 0, 0});
    BuildOptions opts;
    opts.depth = 1;
    opts.focus_depth = 5;
    opts.focus_points = {Complex(0.0, 0.0)};
    auto [tree, measure] = build_tree(f, opts);
    // Walk down the degree-2 branch (the one containing 0).
    std::vector<int> valence;
    int v = tree.base;
    while (v >= 0 && tree.vertex(v).expanded) {
      valence.push_back(tree.vertex(v).valence());
      int next = -1;
      for (int c : tree.vertex(v).child_edges)
        if (tree.edge(c).degree == 2) next = tree.edge(c).bottom;
      v = next;
    }
    ASSERT_GE(valence.size(), 5u);
    for (std::size_t i = 2; i < valence.size(); ++i) EXPECT_EQ(valence[i], 2 * valence[i - 1] - 2) << "i=" << i;
  }
}

TEST(Tree, DepthZeroIsTrunkOnly) {
  auto [tree, measure] = build_tree(parse_polynomial("1,0,-6"), 0);
  EXPECT_TRUE(below_base(tree).empty());
  EXPECT_EQ(tree.depth, 0);
}

TEST(Tree, ConnectedJuliaSetRejected) {
  EXPECT_THROW(build_tree(parse_polynomial("1,0,-1"), 2), ConnectedJuliaSet);
}

TEST(Tree, InvariantsOnRandomPolynomials) {
  std::mt19937 rng(2024);
  for (int trial = 0; trial < 12; ++trial) {
    const int d = 2 + trial % 3;
    const Polynomial f = random_escaping(rng, d);
    auto [tree, measure] = build_tree(f, 3);
    // Height cuts partition the mass.
    for (double frac : {0.3, 0.7, 1.7, 4.1}) {  // away from the trunk heights d^j M
      const double t = frac * tree.M;
      double lowest = tree.M;
      for (const auto& e : tree.edges) lowest = std::min(lowest, e.bottom_height);
      if (t <= lowest) continue;
      Rational total = 0;
      for (int e : height_cut(tree, t)) total += measure[e];
      EXPECT_EQ(total, Rational(1)) << f.to_string() << " t=" << t;
    }
    for (const auto& v : tree.vertices) {
      if (!v.expanded || v.parent_edge < 0 || v.child_edges.empty()) continue;
      // Mass flows through vertices.
      Rational below = 0;
      for (int c : v.child_edges) below += measure[c];
      EXPECT_EQ(below, measure[v.parent_edge]);
      // Degree cocycle: over each edge below F(v), child degrees add up to deg(v).
      std::map<int, int> by_image;
      bool complete = true;
      for (int c : v.child_edges) {
        if (tree.edge(c).image < 0) complete = false;
        by_image[tree.edge(c).image] += tree.edge(c).degree;
      }
      if (!complete) continue;
      for (const auto& [img, sum] : by_image) EXPECT_EQ(sum, tree.edge(v.parent_edge).degree) << f.to_string();
    }
    for (int e : below_base(tree)) {
      const auto& edge = tree.edge(e);
      if (edge.image < 0) continue;
      // Pull-back relation of the measure and the dynamics on heights.
      EXPECT_EQ(measure[e], Rational(edge.degree, d) * measure[edge.image]);
      const TreePoint p = TreePoint::on_edge(e, 0.5 * (edge.top_height + edge.bottom_height));
      const TreePoint q = tree_map(tree, p);
      EXPECT_NEAR(q.height, d * p.height, 1e-6 * d * p.height);
      EXPECT_EQ(q.id, edge.image);
    }
  }
}

TEST(Tree, ConjugacyInvariance) {
  std::mt19937 rng(77);
  for (int trial = 0; trial < 6; ++trial) {
    const Polynomial f = random_escaping(rng, 2 + trial % 3);
    const Polynomial g = rescale_representative(f, Complex(0.7, 1.3));
    EXPECT_NEAR(max_escape_rate(g), max_escape_rate(f), 1e-9 * (1 + max_escape_rate(f)));
    auto [tf, mf] = build_tree(f, 2);
    auto [tg, mg] = build_tree(g, 2);
    EXPECT_TRUE(truncation_isomorphic(tf, tg, 2).has_value()) << f.to_string();
  }
}

TEST(Tree, NormalizeAndGeneration) {
  auto [tree, measure] = build_tree(parse_polynomial("1,0,-6"), 2);
  auto [n1, m1] = normalize(tree, measure);
  auto [n2, m2] = normalize(n1, m1);
  EXPECT_DOUBLE_EQ(n1.base_height(), 1.0);
  EXPECT_DOUBLE_EQ(n2.vertex(3).height, n1.vertex(3).height);
  EXPECT_EQ(generation(n1, TreePoint::at_vertex(n1, n1.base)), 1);
  EXPECT_EQ(generation(n1, TreePoint::on_edge(below_base(n1).front(), 0.3)), 2);
  EXPECT_FALSE(generation(n1, {TreePoint::Kind::JuliaEnd, -1, 0.0}).has_value());
  EXPECT_EQ(iterate_degree(n1, below_base(n1).front(), 3), BigInt(4));
}

TEST(Tree, WeightsAtVertexAndEdge) {
  auto [tree, measure] = build_tree(parse_polynomial("1,0,-6"), 2);
  const auto w = weights_at(tree, measure, TreePoint::at_vertex(tree, tree.base), 0.01);
  ASSERT_EQ(w.size(), 3u);
  EXPECT_EQ(w[0], Rational(0));
  EXPECT_EQ(w[1], Rational(1, 2));
  EXPECT_EQ(w[2], Rational(1, 2));
  EXPECT_THROW(weights_at(tree, measure, TreePoint::at_vertex(tree, tree.base), 0.25), VertexInBall);
}

TEST(Pointed, BasepointOfQuadratic) {
  const Polynomial f = parse_polynomial("1,0,-6");
  auto [tree, measure] = build_tree(f, 2);
  const PointedTree pt = basepoint(f, tree);
  EXPECT_NEAR(pt.raw_height, 0.939893634305685, 1e-6);
  EXPECT_EQ(pt.point.kind, TreePoint::Kind::Edge);
  EXPECT_TRUE(pt.tree.edge(pt.point.id).trunk);
  EXPECT_EQ(pt.generation, 1);
}

TEST(Isomorphism, Examples) {
  auto [a, ma] = build_tree(parse_polynomial("1,0,-6"), 2);
  auto [b, mb] = build_tree(parse_polynomial("1,0,-7"), 2);
  auto [c, mc] = build_tree(parse_polynomial("0.01,1,0,0"), 2);
  const auto self = truncation_isomorphic(a, a, 2);
  ASSERT_TRUE(self.has_value());
  for (std::size_t v = 0; v < a.vertices.size(); ++v)
    if (self->vertex[v] >= 0) EXPECT_EQ(self->vertex[v], static_cast<int>(v));
  EXPECT_TRUE(truncation_isomorphic(a, b, 2).has_value());
  EXPECT_FALSE(truncation_isomorphic(a, c, 2).has_value());
}

TEST(Export, JsonRoundTripAndDot) {
  auto [tree, measure] = build_tree(parse_polynomial("0.01,1,0,0"), 2);
  const std::string text = tree_to_json(tree, measure);
  auto [back, mback] = tree_from_json(text);
  ASSERT_EQ(back.vertices.size(), tree.vertices.size());
  ASSERT_EQ(back.edges.size(), tree.edges.size());
  for (std::size_t i = 0; i < tree.vertices.size(); ++i) {
    EXPECT_NEAR(back.vertices[i].height, tree.vertices[i].height, 1e-12 * tree.vertices[i].height);
    EXPECT_EQ(back.vertices[i].child_edges, tree.vertices[i].child_edges);
  }
  for (std::size_t i = 0; i < tree.edges.size(); ++i) {
    EXPECT_EQ(mback.mass[i], measure.mass[i]);
    EXPECT_EQ(back.edges[i].degree, tree.edges[i].degree);
    EXPECT_EQ(back.edges[i].image, tree.edges[i].image);
  }
  EXPECT_EQ(tree_to_json(back, mback), text);

  auto [q, mq] = build_tree(parse_polynomial("1,0,-6"), 1);
  const std::string dot = tree_to_dot(q, mq);
  EXPECT_EQ(dot, tree_to_dot(q, mq));
  std::size_t count = 0;
  for (std::size_t pos = dot.find("\"1 / 1/2\""); pos != std::string::npos; pos = dot.find("\"1 / 1/2\"", pos + 1))
    ++count;
  EXPECT_EQ(count, 2u);
  auto [t0, m0] = build_tree(parse_polynomial("1,0,-6"), 0);
  EXPECT_EQ(tree_to_dot(t0, m0).find("1 / "), std::string::npos);
}
