#pragma once

#include <utility>
#include <vector>

#include "polytree/tree.hpp"

namespace polytree {

struct BuildOptions {
  /// Every vertex down to this combinatorial depth below v0 is built;
  /// vertices at depth `depth` are leaves whose children are not listed.
  int depth = 6;
  /// Branches whose components contain a focus point are built deeper,
  /// down to `focus_depth`. Deep components of degenerate polynomials can
  /// be far below double precision, so full expansion is not always
  /// possible; focusing keeps the work on the branch that matters.
  int focus_depth = 0;
  std::vector<Complex> focus_points;
  ResolutionSpec resolution;
};

/// Raw-height tree of f. Throws ConnectedJuliaSet when M(f) is below
/// tolerance and ResolutionExhausted when components cannot be separated.
std::pair<Tree, TreeMeasure> build_tree(const Polynomial& f, const BuildOptions& opts);
std::pair<Tree, TreeMeasure> build_tree(const Polynomial& f, int depth, const ResolutionSpec& res = {});

/// Lists the children of vertex v (depth >= 0). No-op when already done.
void expand_vertex(Tree& tree, int v);

/// The edge at sublevel index `level` whose component contains seed
/// `seed`, building the vertices above it as needed.
int component_of_seed(Tree& tree, int level, std::uint32_t seed);

/// Number of sublevel indices the tree's context supports.
int level_count(const Tree& tree);

/// Raw sublevel parameter and vertex heights of the context.
double level_value(const Tree& tree, int level);
double vertex_height_raw(const Tree& tree, int index);  // h_0 = M > h_1 > ...

const Polynomial& tree_polynomial(const Tree& tree);
const SeedSet& tree_seeds(const Tree& tree);
const EscapeEvaluator& tree_evaluator(const Tree& tree);
const EscapeData& tree_escape_data(const Tree& tree);

/// Recomputes the fill of an edge's component (edges below v0 only).
FillResult edge_fill(const Tree& tree, int e);

}  // namespace polytree
