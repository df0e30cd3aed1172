#pragma once

#include <optional>

#include "polytree/build_tree.hpp"

namespace polytree {

struct CircleMax {
  double value = 0.0;  // max of G on |z| = 1 (raw)
  Complex argmax;
};

/// Dense sampling of G on the unit circle followed by golden-section
/// refinement around the best few samples.
CircleMax circle_max(const EscapeEvaluator& ev, int samples = 4096);

struct PointedTree {
  Tree tree;
  TreeMeasure measure;
  TreePoint point;  // the basepoint p(f)
  Complex argmax;   // circle point realizing the height
  double raw_height = 0.0;
  std::optional<int> generation;
};

/// The tree point of z, given G(z) = raw_height. May build vertices on
/// the way down; deep points come back as Kind::Truncated.
TreePoint locate(Tree& tree, Complex z, double raw_height);

/// Basepoint of f on a tree built for f: the point of maximal height in the
/// image of the closed unit disk.
PointedTree basepoint(const Polynomial& f, const Tree& tree, int samples = 4096);

}  // namespace polytree
