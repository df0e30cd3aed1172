#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "polytree/escape.hpp"
#include "polytree/sublevel.hpp"

namespace polytree {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

struct TreeVertex {
  int id = 0;
  double height = 0.0;
  int parent_edge = -1;          // edge toward infinity
  std::vector<int> child_edges;  // edges below; empty until expanded
  int depth = 0;                 // 0 at the base vertex, negative on the trunk
  bool expanded = false;         // children enumerated (always true on the trunk)

  int valence() const noexcept {
    return (parent_edge >= 0 ? 1 : 0) + static_cast<int>(child_edges.size());
  }
};

struct TreeEdge {
  int id = 0;
  int top = -1;     // -1 only for the unbounded edge of the trunk
  int bottom = -1;  // -1 while the lower endpoint has not been built
  double top_height = 0.0;     // +inf for the unbounded edge
  double bottom_height = 0.0;  // height of the lower endpoint, built or not
  int degree = 1;
  int generation = 1;
  int image = -1;  // F(e); -1 when F(e) lies beyond the truncation
  bool trunk = false;
  int level = -1;  // index of the sublevel parameter for edges below the base
  Rational mass;
  bool focus = false;  // component contains a focus point of the build

  // Region data for edges below the base: the component of {G < level_value}
  // is the 4-connected fill from `sample` on `window` (raw heights).
  double level_value = 0.0;
  Complex sample;
  Window window;
  std::vector<std::uint32_t> seeds;
  std::vector<CriticalPoint> critical;

  double length() const noexcept { return top_height - bottom_height; }
};

struct TreeMeasure {
  std::vector<Rational> mass;  // indexed by edge id
  const Rational& operator[](int e) const { return mass.at(static_cast<std::size_t>(e)); }
};

struct BuildContext;

/// Metrized dynamical tree of a polynomial, truncated below the base and
/// above d^k M. Heights are raw escape rates times `scale` (1 unless
/// normalized). Vertex 0 is the base v0; edge 0 is the trunk edge above it.
struct Tree {
  int d = 2;
  double M = 0.0;     // maximal escape rate, raw
  double scale = 1.0;
  bool normalized = false;
  int depth = 0;      // combinatorial depth fully expanded below v0
  int base = 0;
  int top_edge = 0;   // the unbounded trunk edge
  std::vector<TreeVertex> vertices;
  std::vector<TreeEdge> edges;
  std::shared_ptr<const BuildContext> context;  // shared by copies; grows on demand

  const TreeVertex& vertex(int id) const { return vertices.at(static_cast<std::size_t>(id)); }
  const TreeEdge& edge(int id) const { return edges.at(static_cast<std::size_t>(id)); }
  double base_height() const { return vertex(base).height; }
  /// Parent edge of e (toward infinity), -1 for the unbounded edge.
  int parent(int e) const;
};

TreeMeasure measure_of(const Tree& tree);

/// A point of the closed tree.
struct TreePoint {
  enum class Kind { Vertex, Edge, JuliaEnd, Truncated };
  Kind kind = Kind::Vertex;
  int id = 0;           // vertex id, edge id, or the last built edge above the point
  double height = 0.0;  // in the tree's current scale

  static TreePoint at_vertex(const Tree& t, int v) { return {Kind::Vertex, v, t.vertex(v).height}; }
  static TreePoint on_edge(int e, double h) { return {Kind::Edge, e, h}; }
};

/// F on points; heights scale by d. Throws TruncationExceeded past the top.
TreePoint tree_map(const Tree& tree, const TreePoint& p);

/// deg(e) deg(F e) ... deg(F^{n-1} e).
BigInt iterate_degree(const Tree& tree, int e, int n);

/// min n >= 1 with d^n H(p) > H(v0); empty for Julia ends (H = 0).
std::optional<int> generation(const Tree& tree, const TreePoint& p);

Rational edge_mass(const Tree& tree, const TreeMeasure& measure, int e);

/// Heights divided by M so the base sits at height 1. Idempotent.
std::pair<Tree, TreeMeasure> normalize(const Tree& tree, const TreeMeasure& measure);

/// Masses of the components of the tree minus the closed ball B(p, r),
/// sorted ascending; the unbounded component is included. Throws
/// VertexInBall when B(p, 2r) holds a vertex other than p.
std::vector<Rational> weights_at(const Tree& tree, const TreeMeasure& measure, const TreePoint& p, double r);

/// Edges whose open height range contains t.
std::vector<int> height_cut(const Tree& tree, double t);

/// Edges from e up to and including the unbounded edge, bottom to top.
std::vector<int> path_to_top(const Tree& tree, int e);

/// The point at height h on the path from e toward infinity (h at or
/// above e's bottom endpoint).
TreePoint point_above(const Tree& tree, int e, double h);

/// Edges below the base (not trunk) whose component contains seed `seed`,
/// ordered by level.
std::vector<int> branch_of_seed(const Tree& tree, std::uint32_t seed);

/// Depth-first list of edges in the subtree hanging from vertex v.
std::vector<int> subtree_edges(const Tree& tree, int v);

}  // namespace polytree
