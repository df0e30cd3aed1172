#pragma once

#include <cstddef>
#include <vector>

#include "polytree/polynomial.hpp"

namespace polytree {

struct RootSolveOptions {
  int max_iterations = 800;
  double step_tol = 1e-15;
  int polish_steps = 3;
};

/// All roots (with multiplicity) of the polynomial with coefficients `low`
/// (lowest power first). Exact zero roots are split off before iterating;
/// the rest come from Aberth-Ehrlich simultaneous iteration started on the
/// Newton-polygon radii, followed by Newton polishing.
std::vector<Complex> solve_roots(std::span<const Complex> low, const RootSolveOptions& opts = {});

struct RootCluster {
  Complex center;
  int multiplicity = 1;
};

struct ClusterResult {
  std::vector<RootCluster> clusters;
  /// Relative linkage tolerance that produced a validated grouping.
  double tolerance = 0.0;
  /// True when no tolerance on the ladder gave a grouping whose Taylor
  /// coefficients confirm every multiplicity.
  bool ambiguous = false;
  /// Coarsest validated-or-not alternative reading, filled when ambiguous.
  std::vector<RootCluster> alternative;
};

/// Groups numerically computed roots into multiple roots. Candidate
/// groupings come from single linkage at a ladder of tolerances
/// (relative to 1 + max|root|); a grouping is accepted when, at every
/// cluster center c of size m, the Taylor coefficients t_0..t_{m-1} of the
/// polynomial at c are negligible against t_m.
ClusterResult cluster_roots(std::span<const Complex> low, std::span<const Complex> roots);

/// Convenience: solve then cluster.
ClusterResult roots_with_multiplicity(std::span<const Complex> low);

}  // namespace polytree
