#pragma once

#include <string>
#include <vector>

#include "polytree/boundary.hpp"
#include "polytree/roots.hpp"

namespace polytree {

enum class StabilityTag { Stable, StrictlySemistable, Unstable };
std::string to_string(StabilityTag t);

/// One inequality of the criteria, as evaluated.
struct StabilityWitness {
  std::string condition;  // e.g. "deg P(z,1) > D/2" or "mult(root) <= D/2"
  Complex root;           // zero concerned (multiplicity conditions only)
  int value = 0;          // degree or multiplicity
  bool holds_stable = false;
  bool holds_semistable = false;
};

struct StabilityVerdict {
  StabilityTag tag = StabilityTag::Unstable;
  int degree_p = 0;
  std::vector<RootCluster> zeros;
  std::vector<StabilityWitness> witnesses;  // failing or boundary instances
  /// Root grouping could not be validated: the verdict is the worse of the
  /// two readings and `alternative_tag` the other one.
  bool ambiguous = false;
  StabilityTag alternative_tag = StabilityTag::Unstable;
};

/// Stability of (P(z,w) w^k : b w^D) under conjugation, from the degree of
/// P(z,1) and the multiplicities of its zeros.
StabilityVerdict stability(const BoundaryPoint& bp, int D);
StabilityVerdict stability(const BoundaryPoint& bp);

/// Same decision from precomputed data (degree of P(z,1), zero
/// multiplicities, whether b vanishes).
StabilityTag stability_from_counts(int D, int degree_p, const std::vector<int>& multiplicities, bool b_zero);

/// Least N with 2 (d-1)^(N-1) < d^(N-1); exact integer arithmetic.
int nd_bound(int d);
/// The defining inequality at a given N.
bool nd_inequality(int d, int N);

}  // namespace polytree
