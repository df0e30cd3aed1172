#pragma once

#include <complex>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace polytree {

using Complex = std::complex<double>;

/// Dense coefficient vector, lowest power first (index == power).
using Coeffs = std::vector<Complex>;

Complex horner(std::span<const Complex> low, Complex z);
/// Value and first derivative in one pass.
std::pair<Complex, Complex> horner_with_derivative(std::span<const Complex> low, Complex z);
Coeffs derivative(std::span<const Complex> low);
Coeffs multiply(std::span<const Complex> a, std::span<const Complex> b);
/// Coefficients of p(q(z)).
Coeffs compose(std::span<const Complex> p, std::span<const Complex> q);
/// Coefficients of p(z + shift) (Taylor coefficients at `shift`).
Coeffs taylor_shift(std::span<const Complex> low, Complex shift);
/// Drops leading (highest-power) coefficients that are exactly zero.
void trim(Coeffs& low);

/// A complex polynomial of degree d >= 2 with nonzero leading coefficient.
/// Immutable once constructed.
class Polynomial {
 public:
  /// Coefficients listed a_d, ..., a_0 (the text-format order).
  static Polynomial from_high(std::vector<Complex> high);
  static Polynomial from_low(Coeffs low);

  int degree() const noexcept { return static_cast<int>(low_.size()) - 1; }
  Complex leading() const noexcept { return low_.back(); }
  Complex coeff(int power) const { return low_.at(static_cast<std::size_t>(power)); }
  std::span<const Complex> low() const noexcept { return low_; }
  std::vector<Complex> high() const;

  Complex operator()(Complex z) const { return horner(low_, z); }
  Complex derivative_at(Complex z) const { return horner_with_derivative(low_, z).second; }

  /// Text form: coefficients highest degree first, comma separated.
  std::string to_string() const;

  friend bool operator==(const Polynomial&, const Polynomial&) = default;

 private:
  explicit Polynomial(Coeffs low) : low_(std::move(low)) {}
  Coeffs low_;
};

/// Parses `a`, `bi`, `a+bi`, `a-bi`, `i`, `-i`. Throws ParseError with the
/// offset of the offending character (plus `base_offset`).
Complex parse_complex(std::string_view text, std::size_t base_offset = 0);

/// Shortest round-trip text for a complex literal in the same grammar.
std::string format_complex(Complex z);

/// Parses the comma separated polynomial grammar, e.g. "1,0,-6".
Polynomial parse_polynomial(std::string_view text);

/// Conjugate by an affine change of coordinates to the monic centered form
/// z^d + 0 z^{d-1} + ...  The d-1 possible leading-root choices are resolved
/// by picking the smallest argument (in [0, 2pi)) for the first coefficient
/// whose argument depends on the choice.
Polynomial monic_center(const Polynomial& f);

/// lambda * f(z / lambda), the conjugate of f by z -> lambda z.
Polynomial rescale_representative(const Polynomial& f, Complex lambda);

/// Conjugate by the affine map phi(z) = scale * (z - center):
/// returns phi o f o phi^{-1}.
Polynomial affine_conjugate(const Polynomial& f, Complex center, Complex scale);

}  // namespace polytree
