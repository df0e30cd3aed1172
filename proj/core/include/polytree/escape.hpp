#pragma once

#include <cstddef>
#include <vector>

#include "polytree/polynomial.hpp"

namespace polytree {

struct CriticalPoint {
  Complex location;
  int multiplicity = 1;
  double residual = 0.0;  // |f'(location)|
};

/// Roots of f' grouped by multiplicity (multiplicities sum to d - 1).
std::vector<CriticalPoint> critical_points(const Polynomial& f);

/// Escape-rate evaluator for one polynomial. Precomputes the escape radius
/// and the constants of the tail estimate so repeated evaluations (grids,
/// flood fills) stay cheap.
class EscapeEvaluator {
 public:
  explicit EscapeEvaluator(const Polynomial& f, int cap = 10000);

  /// G_f(z) to within `tol`; exactly 0 for orbits that stay inside the
  /// escape radius long enough that d^-n * sup G cannot exceed `tol`.
  double rate(Complex z, double tol = 1e-12) const;

  /// True iff G_f(z) < level. Stops as soon as the answer is certain.
  bool below(Complex z, double level) const;

  double radius() const noexcept { return radius_; }
  const Polynomial& poly() const noexcept { return f_; }
  int cap() const noexcept { return cap_; }

 private:
  Polynomial f_;
  int cap_;
  double d_;
  double radius_;
  double tail_coeff_;  // sum_{i<d} |a_i / a_d|
  double log_lead_;    // log|a_d| / (d - 1)
  double g_bound_;     // upper bound of G on the disk of radius R
};

struct EscapeData {
  std::vector<CriticalPoint> critical;
  std::vector<double> critical_rates;  // parallel to `critical`
  double max_rate = 0.0;
  double radius = 0.0;
  int cap = 10000;
};

double escape_rate(const Polynomial& f, Complex z, double tol = 1e-12);
double max_escape_rate(const Polynomial& f, double tol = 1e-12);
EscapeData escape_data(const Polynomial& f, double tol = 1e-12);

/// Solutions of f(z) = y with multiplicity (d values).
std::vector<Complex> preimages(const Polynomial& f, Complex y);

struct IterateRoots {
  std::vector<Complex> roots;     // d^n values with multiplicity
  std::vector<double> residuals;  // |f^n(root)|, parallel to `roots`
};

inline constexpr std::size_t kDefaultIterateCap = 4096;

/// Roots of f^n, found by pulling the roots of f back n - 1 times.
IterateRoots roots_of_iterate(const Polynomial& f, int n, std::size_t cap = kDefaultIterateCap);

/// Projective coefficient vector (a_D : ... : a_0 : b) of f^n with b = 1
/// before normalization, D = d^n; divided by its largest-modulus entry.
/// The iteration runs on the projective vector itself so large or tiny
/// coefficients never overflow.
std::vector<Complex> iterate_coefficients(const Polynomial& f, int n,
                                          std::size_t cap = kDefaultIterateCap);

/// Divides by the largest-modulus entry (no-op on the zero vector).
void projective_normalize(std::vector<Complex>& v);

}  // namespace polytree
