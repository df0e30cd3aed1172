#include "polytree/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>

#include "polytree/errors.hpp"

namespace polytree {

Complex horner(std::span<const Complex> low, Complex z) {
  Complex acc{0.0, 0.0};
  for (auto it = low.rbegin(); it != low.rend(); ++it) acc = acc * z + *it;
  return acc;
}

std::pair<Complex, Complex> horner_with_derivative(std::span<const Complex> low, Complex z) {
  Complex p{0.0, 0.0};
  Complex dp{0.0, 0.0};
  for (auto it = low.rbegin(); it != low.rend(); ++it) {
    dp = dp * z + p;
    p = p * z + *it;
  }
  return {p, dp};
}

Coeffs derivative(std::span<const Complex> low) {
  if (low.size() <= 1) return {Complex{0.0, 0.0}};
  Coeffs out(low.size() - 1);
  for (std::size_t j = 1; j < low.size(); ++j) out[j - 1] = low[j] * static_cast<double>(j);
  return out;
}

Coeffs multiply(std::span<const Complex> a, std::span<const Complex> b) {
  if (a.empty() || b.empty()) return {};
  Coeffs out(a.size() + b.size() - 1, Complex{0.0, 0.0});
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == Complex{}) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

Coeffs compose(std::span<const Complex> p, std::span<const Complex> q) {
  Coeffs acc{Complex{0.0, 0.0}};
  for (auto it = p.rbegin(); it != p.rend(); ++it) {
    acc = multiply(acc, q);
    acc[0] += *it;
  }
  trim(acc);
  return acc;
}

Coeffs taylor_shift(std::span<const Complex> low, Complex shift) {
  Coeffs c(low.begin(), low.end());
  const std::size_t n = c.size();
  // Repeated synthetic division by (z - shift).
  for (std::size_t k = 0; k + 1 < n; ++k)
    for (std::size_t j = n - 1; j > k; --j) c[j - 1] += shift * c[j];
  return c;
}

void trim(Coeffs& low) {
  while (low.size() > 1 && low.back() == Complex{}) low.pop_back();
}

Polynomial Polynomial::from_high(std::vector<Complex> high) {
  std::reverse(high.begin(), high.end());
  return from_low(std::move(high));
}

Polynomial Polynomial::from_low(Coeffs low) {
  if (low.size() < 3)
    throw InvalidArgument("polycore", "polynomial degree must be at least 2");
  if (low.back() == Complex{})
    throw InvalidArgument("polycore", "leading coefficient zero");
  for (const auto& a : low)
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag()))
      throw InvalidArgument("polycore", "non-finite coefficient");
  return Polynomial(std::move(low));
}

std::vector<Complex> Polynomial::high() const { return {low_.rbegin(), low_.rend()}; }

std::string Polynomial::to_string() const {
  std::string out;
  for (auto it = low_.rbegin(); it != low_.rend(); ++it) {
    if (!out.empty()) out += ',';
    out += format_complex(*it);
  }
  return out;
}

namespace {

double parse_real(std::string_view s, std::size_t offset) {
  if (s.empty()) throw ParseError("expected a number", offset);
  std::size_t pos = 0;
  bool negative = false;
  if (s[0] == '+' || s[0] == '-') {
    negative = s[0] == '-';
    pos = 1;
  }
  if (pos == s.size()) throw ParseError("expected digits after sign", offset + pos);
  double value = 0.0;
  const char* first = s.data() + pos;
  const char* last = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(first, last, value, std::chars_format::general);
  if (ec != std::errc{} || ptr == first)
    throw ParseError("malformed number", offset + pos);
  if (ptr != last)
    throw ParseError("unexpected character '" + std::string(1, *ptr) + "'",
                     offset + static_cast<std::size_t>(ptr - s.data()));
  return negative ? -value : value;
}

std::string format_real(double x) {
  if (x == 0.0) x = 0.0;  // drop the sign of negative zero
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  (void)ec;
  return std::string(buf, ptr);
}

}  // namespace

Complex parse_complex(std::string_view text, std::size_t base_offset) {
  std::size_t lead = 0;
  while (lead < text.size() && std::isspace(static_cast<unsigned char>(text[lead]))) ++lead;
  std::size_t end = text.size();
  while (end > lead && std::isspace(static_cast<unsigned char>(text[end - 1]))) --end;
  const std::string_view s = text.substr(lead, end - lead);
  const std::size_t off = base_offset + lead;
  if (s.empty()) throw ParseError("empty coefficient", off);

  if (s.back() != 'i') return {parse_real(s, off), 0.0};

  const std::string_view body = s.substr(0, s.size() - 1);
  // Split at the last sign that is not an exponent sign and not leading.
  std::size_t split = std::string_view::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  auto imag_of = [&](std::string_view part, std::size_t part_off) {
    if (part.empty() || part == "+") return 1.0;
    if (part == "-") return -1.0;
    return parse_real(part, part_off);
  };
  if (split == std::string_view::npos) return {0.0, imag_of(body, off)};
  return {parse_real(body.substr(0, split), off), imag_of(body.substr(split), off + split)};
}

std::string format_complex(Complex z) {
  const double re = z.real();
  const double im = z.imag();
  if (im == 0.0) return format_real(re);
  const std::string imag = format_real(im) + "i";
  if (re == 0.0) return imag;
  return format_real(re) + (im < 0.0 ? "" : "+") + imag;
}

Polynomial parse_polynomial(std::string_view text) {
  std::vector<Complex> high;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = text.find(',', start);
    const std::size_t stop = comma == std::string_view::npos ? text.size() : comma;
    high.push_back(parse_complex(text.substr(start, stop - start), start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (high.size() < 3) throw ParseError("polynomial needs degree >= 2 (at least 3 coefficients)", 0);
  if (high.front() == Complex{}) throw ParseError("leading coefficient zero", 0);
  return Polynomial::from_high(std::move(high));
}

Polynomial affine_conjugate(const Polynomial& f, Complex center, Complex scale) {
  Coeffs h = taylor_shift(f.low(), center);
  h[0] -= center;
  Complex power = scale;  // scale^{1-j}, starting at j = 0
  for (std::size_t j = 0; j < h.size(); ++j) {
    h[j] *= power;
    power /= scale;
  }
  return Polynomial::from_low(std::move(h));
}

Polynomial rescale_representative(const Polynomial& f, Complex lambda) {
  if (lambda == Complex{}) throw InvalidArgument("polycore", "rescaling factor must be nonzero");
  return affine_conjugate(f, Complex{}, lambda);
}

Polynomial monic_center(const Polynomial& f) {
  const int d = f.degree();
  const Complex ad = f.leading();
  const Complex center = -f.coeff(d - 1) / (static_cast<double>(d) * ad);
  const Complex root = std::pow(ad, 1.0 / static_cast<double>(d - 1));

  auto arg01 = [](Complex z) {
    double a = std::arg(z);
    if (a < 0.0) a += 2.0 * std::numbers::pi;
    return a;
  };

  std::vector<Polynomial> candidates;
  for (int m = 0; m < d - 1; ++m) {
    const Complex omega = std::polar(1.0, 2.0 * std::numbers::pi * m / (d - 1));
    Polynomial g = affine_conjugate(f, center, root * omega);
    // Pin the normalized coefficients exactly.
    Coeffs low(g.low().begin(), g.low().end());
    low[static_cast<std::size_t>(d)] = Complex{1.0, 0.0};
    low[static_cast<std::size_t>(d - 1)] = Complex{};
    candidates.push_back(Polynomial::from_low(std::move(low)));
  }
  if (candidates.size() == 1) return candidates.front();

  const double zero_tol = 1e-12;
  const double arg_tol = 1e-9;
  std::size_t best = 0;
  for (std::size_t c = 1; c < candidates.size(); ++c) {
    for (int j = d - 2; j >= 0; --j) {
      const Complex a = candidates[c].coeff(j);
      const Complex b = candidates[best].coeff(j);
      const double scale = std::max({std::abs(a), std::abs(b), 1.0});
      if (std::abs(a) <= zero_tol * scale && std::abs(b) <= zero_tol * scale) continue;
      double da = arg01(a);
      double db = arg01(b);
      // Arguments just below 2pi are the same ray as 0.
      if (2.0 * std::numbers::pi - da < arg_tol) da = 0.0;
      if (2.0 * std::numbers::pi - db < arg_tol) db = 0.0;
      if (std::abs(da - db) <= arg_tol) continue;
      if (da < db) best = c;
      break;
    }
  }
  return candidates[best];
}

}  // namespace polytree
