#pragma once

#include <optional>
#include <vector>

#include "polytree/tree.hpp"

namespace polytree {

/// Vertex and edge correspondence of an isomorphism T1(k) -> T2(k);
/// entries are -1 outside the truncation.
struct TreeMapping {
  std::vector<int> vertex;
  std::vector<int> edge;
};

/// A simplicial isomorphism of the depth-k truncations (k levels below the
/// base, trunk up to d^k times the base height) that preserves degrees and
/// commutes with F wherever both sides stay in the truncation.
std::optional<TreeMapping> truncation_isomorphic(const Tree& t1, const Tree& t2, int k);

/// Same, additionally sending the marked point p1 to p2 (points below the
/// truncation are replaced by their nearest point of T(k)).
std::optional<TreeMapping> truncation_isomorphic(const Tree& t1, const TreePoint& p1, const Tree& t2,
                                                 const TreePoint& p2, int k);

}  // namespace polytree
