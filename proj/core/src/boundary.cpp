#include "polytree/boundary.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "polytree/errors.hpp"

namespace polytree {

void validate(const BoundaryPoint& bp) {
  if (bp.p.empty() || bp.p.back() == Complex{})
    throw InvalidArgument("polycore", "boundary point needs P(1,0) != 0");
  if (bp.k < 0) throw InvalidArgument("polycore", "boundary point needs k >= 0");
  if (bp.degree_p() + bp.k != bp.D)
    throw InvalidArgument("polycore", "boundary point needs deg P + k = D");
}

namespace {

int parse_int(std::string_view text, std::size_t offset) {
  int value = 0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || text.empty()) throw ParseError("expected an integer", offset);
  if (ptr != end) throw ParseError("unexpected character", offset + static_cast<std::size_t>(ptr - text.data()));
  return value;
}

// Splits `text` at `sep`, returning pieces with their offsets.
std::vector<std::pair<std::string_view, std::size_t>> split(std::string_view text, char sep, std::size_t offset) {
  std::vector<std::pair<std::string_view, std::size_t>> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (i == text.size() || text[i] == sep) {
      out.emplace_back(text.substr(start, i - start), offset + start);
      start = i + 1;
    }
  }
  return out;
}

}  // namespace

BoundaryPoint parse_boundary(std::string_view text) {
  static constexpr std::string_view keys[] = {"P", "k", "b", "D"};
  const auto fields = split(text, ';', 0);
  if (fields.size() != 4) {
    std::size_t pos = text.size();
    if (fields.size() > 4) pos = fields[4].second - 1;
    throw ParseError("expected P=...;k=...;b=...;D=...", pos);
  }
  BoundaryPoint bp;
  for (std::size_t f = 0; f < 4; ++f) {
    const auto [field, off] = fields[f];
    const auto eq = field.find('=');
    if (eq == std::string_view::npos || field.substr(0, eq) != keys[f])
      throw ParseError("expected field " + std::string(keys[f]) + "=", off);
    const auto value = field.substr(eq + 1);
    const std::size_t voff = off + eq + 1;
    switch (f) {
      case 0: {
        std::vector<Complex> high;
        for (auto [item, ioff] : split(value, ',', voff)) high.push_back(parse_complex(item, ioff));
        if (high.front() == Complex{}) throw ParseError("leading coefficient zero", voff);
        bp.p.assign(high.rbegin(), high.rend());
        break;
      }
      case 1: bp.k = parse_int(value, voff); break;
      case 2: bp.b = parse_complex(value, voff); break;
      default: bp.D = parse_int(value, voff); break;
    }
  }
  if (bp.k < 0) throw ParseError("k must be nonnegative", fields[1].second + 2);
  if (bp.degree_p() + bp.k != bp.D) throw ParseError("deg P + k must equal D", fields[3].second + 2);
  return bp;
}

std::string format_boundary(const BoundaryPoint& bp) {
  std::string out = "P=";
  for (auto it = bp.p.rbegin(); it != bp.p.rend(); ++it) {
    if (it != bp.p.rbegin()) out += ',';
    out += format_complex(*it);
  }
  out += ";k=" + std::to_string(bp.k) + ";b=" + format_complex(bp.b) + ";D=" + std::to_string(bp.D);
  return out;
}

SpherePoint eval_boundary(const BoundaryPoint& bp, const SpherePoint& z) {
  if (bp.b == Complex{}) return SpherePoint::inf();
  if (z.infinite) {
    if (bp.degree_p() > 0) return SpherePoint::inf();
    return SpherePoint::at(bp.p[0] / bp.b);
  }
  return SpherePoint::at(horner(bp.p, z.value) / bp.b);
}

BoundaryPoint boundary_from_projective(std::vector<Complex> coeffs, double zero_tol) {
  if (coeffs.size() < 2) throw InvalidArgument("polycore", "projective vector too short");
  {
    double m = 0.0;
    for (const auto& x : coeffs) m = std::max(m, std::abs(x));
    if (m == 0.0) throw InvalidArgument("polycore", "zero projective vector");
    for (auto& x : coeffs) x /= m;
  }
  BoundaryPoint bp;
  bp.D = static_cast<int>(coeffs.size()) - 2;
  std::size_t first = 0;
  while (first + 1 < coeffs.size() - 1 && std::abs(coeffs[first]) <= zero_tol) ++first;
  if (std::abs(coeffs[first]) <= zero_tol)
    throw InvalidArgument("polycore", "projective vector has no polynomial part");
  bp.k = static_cast<int>(first);
  for (std::size_t i = coeffs.size() - 2; i + 1 > first; --i)
    bp.p.push_back(std::abs(coeffs[i]) <= zero_tol ? Complex{} : coeffs[i]);
  bp.b = std::abs(coeffs.back()) <= zero_tol ? Complex{} : coeffs.back();
  return bp;
}

std::vector<Complex> projective_coefficients(const BoundaryPoint& bp) {
  std::vector<Complex> out(static_cast<std::size_t>(bp.k), Complex{});
  out.insert(out.end(), bp.p.rbegin(), bp.p.rend());
  out.push_back(bp.b);
  double m = 0.0;
  for (const auto& x : out) m = std::max(m, std::abs(x));
  if (m > 0.0)
    for (auto& x : out) x /= m;
  return out;
}

double projective_distance(std::vector<Complex> a, std::vector<Complex> b) {
  if (a.size() != b.size()) throw InvalidArgument("polycore", "projective vectors differ in length");
  auto argmax = [](const std::vector<Complex>& v) {
    return static_cast<std::size_t>(
        std::max_element(v.begin(), v.end(), [](Complex x, Complex y) { return std::abs(x) < std::abs(y); }) -
        v.begin());
  };
  auto dist_at = [&](std::size_t i) {
    if (a[i] == Complex{} || b[i] == Complex{}) return 2.0;
    double best = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) best = std::max(best, std::abs(a[j] / a[i] - b[j] / b[i]));
    return best;
  };
  return std::min(dist_at(argmax(a)), dist_at(argmax(b)));
}

}  // namespace polytree
