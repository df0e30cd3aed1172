#include "polytree/family.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>

#include "polytree/errors.hpp"

namespace polytree {

namespace {

std::size_t skip_space(std::string_view s, std::size_t pos) {
  while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
  return pos;
}

// Top-level comma positions (outside parentheses).
std::vector<std::size_t> top_level_commas(std::string_view s) {
  std::vector<std::size_t> out;
  int depth = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '(') ++depth;
    else if (s[i] == ')') --depth;
    else if (s[i] == ',' && depth == 0) out.push_back(i);
  }
  return out;
}

int parse_int_at(std::string_view s, std::size_t& pos) {
  pos = skip_space(s, pos);
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data() + pos, s.data() + s.size(), v);
  if (ec != std::errc{}) throw ParseError("expected an integer", pos);
  pos = static_cast<std::size_t>(ptr - s.data());
  return v;
}

}  // namespace

std::size_t FamilySpec::size() const noexcept {
  return static_cast<std::size_t>(std::abs(last - first)) + 1;
}

int FamilySpec::index_to_j(std::size_t index) const noexcept {
  const int step = last >= first ? 1 : -1;
  return first + step * static_cast<int>(index);
}

Complex FamilySpec::parameter(std::size_t index) const {
  return schedule.eval({{"j", Complex(index_to_j(index), 0.0)}});
}

FamilySpec parse_family(std::string_view coeffs, std::string_view schedule, std::string_view lambda) {
  FamilySpec spec;
  spec.coeff_text = std::string(coeffs);
  spec.schedule_text = std::string(schedule);
  spec.lambda_text = std::string(lambda);

  std::size_t start = 0;
  auto commas = top_level_commas(coeffs);
  commas.push_back(coeffs.size());
  for (auto c : commas) {
    spec.coeffs.push_back(Expr::parse(coeffs.substr(start, c - start), start));
    start = c + 1;
  }
  if (spec.coeffs.size() < 3) throw ParseError("a family needs degree at least 2", coeffs.size());

  const auto sc = top_level_commas(schedule);
  if (sc.empty()) throw ParseError("schedule needs '<expr>, <first>..<last>'", schedule.size());
  const std::size_t split = sc.back();
  std::size_t ebegin = skip_space(schedule, 0);
  if (schedule.substr(ebegin, 2) == "t=") ebegin += 2;
  spec.schedule = Expr::parse(schedule.substr(ebegin, split - ebegin), ebegin);
  for (const auto& v : spec.schedule.variables())
    if (v != "j") throw ParseError("schedule may only use j", ebegin);

  std::size_t pos = skip_space(schedule, split + 1);
  if (schedule.substr(pos, 2) == "j=") pos += 2;
  spec.first = parse_int_at(schedule, pos);
  if (schedule.substr(pos, 2) != "..") throw ParseError("expected '..'", pos);
  pos += 2;
  spec.last = parse_int_at(schedule, pos);
  pos = skip_space(schedule, pos);
  if (pos != schedule.size()) throw ParseError("unexpected character", pos);

  const std::size_t lb = skip_space(lambda, 0);
  if (lb < lambda.size()) {
    std::size_t le = lb;
    if (lambda.substr(lb, 7) == "lambda=") le += 7;
    spec.lambda = Expr::parse(lambda.substr(le), le);
  }
  return spec;
}

std::vector<FamilyMember> sample_members(const FamilySpec& spec, std::size_t count) {
  if (count < 1) throw InvalidArgument("degeneration", "sample count must be at least 1");
  if (count > spec.size()) throw InvalidArgument("degeneration", "sample count exceeds the schedule length");
  std::vector<FamilyMember> out;
  int direction = 0;
  for (std::size_t index = 0; index < count; ++index) {
    const Complex t = spec.parameter(index);
    const int j = spec.index_to_j(index);
    if (!out.empty()) {
      const double prev = std::abs(out.back().t), cur = std::abs(t);
      const int dir = cur > prev ? 1 : (cur < prev ? -1 : 0);
      if (dir == 0 || (direction != 0 && dir != direction))
        throw InvalidArgument("degeneration", "schedule is not strictly monotone at j=" + std::to_string(j));
      direction = dir;
    }
    const Expr::Bindings vars{{"t", t}, {"j", Complex(j, 0.0)}};
    std::vector<Complex> high;
    for (const auto& e : spec.coeffs) {
      const Complex c = e.eval(vars);
      if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
        throw InvalidArgument("degeneration", "coefficient is not finite at j=" + std::to_string(j));
      high.push_back(c);
    }
    if (high.front() == Complex{})
      throw DegreeDrop("leading coefficient vanishes at j=" + std::to_string(j));
    Polynomial f = Polynomial::from_high(high);
    Complex lam{1.0, 0.0};
    if (spec.lambda) {
      lam = spec.lambda->eval(vars);
      if (lam == Complex{} || !std::isfinite(lam.real()) || !std::isfinite(lam.imag()))
        throw InvalidArgument("degeneration", "lambda must be finite and nonzero at j=" + std::to_string(j));
      f = rescale_representative(f, lam);
    }
    out.push_back({j, t, lam, std::move(f)});
  }
  return out;
}

std::vector<FamilyMember> sample_members(const FamilySpec& spec) { return sample_members(spec, spec.size()); }

std::vector<Polynomial> sample_family(const FamilySpec& spec, std::size_t count) {
  std::vector<Polynomial> out;
  for (auto& m : sample_members(spec, count)) out.push_back(std::move(m.f));
  return out;
}

}  // namespace polytree
