#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "polytree/polynomial.hpp"
#include "polytree/sphere.hpp"

namespace polytree {

/// The degenerate map (P(z,w) w^k : b w^D) of the coefficient
/// compactification. `p` holds P(z,1) lowest power first; its top entry is
/// P(1,0) and must be nonzero, and deg P + k = D.
struct BoundaryPoint {
  Coeffs p;
  int k = 0;
  Complex b{};
  int D = 0;

  int degree_p() const noexcept { return static_cast<int>(p.size()) - 1; }
};

/// Validates the invariants above; throws InvalidArgument.
void validate(const BoundaryPoint& bp);

/// `P=<coeffs, highest first>;k=<int>;b=<complex>;D=<int>`.
BoundaryPoint parse_boundary(std::string_view text);
std::string format_boundary(const BoundaryPoint& bp);

/// The limit map: P(z,1)/b where b != 0 (and infinity at infinity when
/// deg P > 0); the constant infinity when b = 0.
SpherePoint eval_boundary(const BoundaryPoint& bp, const SpherePoint& z);

/// Reads (a_D : ... : a_0 : b) as a boundary point. Entries with modulus
/// at most `zero_tol` (after normalization) count as zero.
BoundaryPoint boundary_from_projective(std::vector<Complex> coeffs, double zero_tol = 1e-9);

/// Projective coefficient vector (a_D : ... : a_0 : b), normalized.
std::vector<Complex> projective_coefficients(const BoundaryPoint& bp);

/// max-norm distance between normalized projective vectors, minimized
/// over the unit phase that aligns the dominant entries.
double projective_distance(std::vector<Complex> a, std::vector<Complex> b);

}  // namespace polytree
