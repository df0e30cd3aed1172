#include "polytree/escape.hpp"

#include <algorithm>
#include <cmath>

#include "polytree/errors.hpp"
#include "polytree/roots.hpp"

namespace polytree {

std::vector<CriticalPoint> critical_points(const Polynomial& f) {
  const Coeffs df = derivative(f.low());
  const auto clustered = roots_with_multiplicity(df);
  std::vector<CriticalPoint> out;
  for (const auto& c : clustered.clusters)
    out.push_back({c.center, c.multiplicity, std::abs(horner(df, c.center))});
  return out;
}

EscapeEvaluator::EscapeEvaluator(const Polynomial& f, int cap)
    : f_(f), cap_(cap), d_(static_cast<double>(f.degree())) {
  const auto low = f.low();
  const double lead = std::abs(f.leading());
  double s = 0.0;
  for (int i = 0; i < f.degree(); ++i) s += std::abs(low[static_cast<std::size_t>(i)]) / lead;
  tail_coeff_ = s;
  // Beyond this radius |f(z)| >= 2|z| and |a_i z^i| sums stay below half
  // the leading term, which the tail estimate below relies on.
  radius_ = std::max({1.0 + std::max(1.0, s), 2.0 * s, std::pow(4.0 / lead, 1.0 / (d_ - 1.0))});
  log_lead_ = std::log(lead) / (d_ - 1.0);
  // G is subharmonic, so its sup on the disk is attained on |z| = R.
  g_bound_ = std::max(0.0, std::log(radius_) + log_lead_ + 1.0 / (d_ - 1.0));
}

double EscapeEvaluator::rate(Complex z, double tol) const {
  const auto low = f_.low();
  const double huge = std::exp(250.0 / d_);
  double scale = 1.0;
  for (int n = 0; n <= cap_; ++n) {
    const double az = std::abs(z);
    if (az > radius_) {
      const double err = scale * 2.0 * tail_coeff_ / (az * (d_ - 1.0));
      if (err < tol || az > huge) return std::max(0.0, scale * (std::log(az) + log_lead_));
    } else if (scale * g_bound_ < tol) {
      return 0.0;
    }
    z = horner(low, z);
    scale /= d_;
  }
  return 0.0;
}

bool EscapeEvaluator::below(Complex z, double level) const {
  const auto low = f_.low();
  const double huge = std::exp(250.0 / d_);
  double scale = 1.0;
  for (int n = 0; n <= cap_; ++n) {
    const double az = std::abs(z);
    if (az > radius_) {
      const double est = scale * (std::log(az) + log_lead_);
      const double err = scale * 2.0 * tail_coeff_ / (az * (d_ - 1.0));
      if (est + err < level) return true;
      if (est - err >= level) return false;
      if (err < 1e-15 * level || az > huge) return est < level;
    } else if (scale * g_bound_ < level) {
      return true;
    }
    z = horner(low, z);
    scale /= d_;
  }
  return true;
}

double escape_rate(const Polynomial& f, Complex z, double tol) {
  if (!(tol > 0.0)) throw InvalidArgument("polycore", "escape_rate tolerance must be positive");
  return EscapeEvaluator(f).rate(z, tol);
}

EscapeData escape_data(const Polynomial& f, double tol) {
  EscapeEvaluator ev(f);
  EscapeData data;
  data.critical = critical_points(f);
  data.radius = ev.radius();
  data.cap = ev.cap();
  for (const auto& c : data.critical) {
    const double g = ev.rate(c.location, tol);
    data.critical_rates.push_back(g);
    data.max_rate = std::max(data.max_rate, g);
  }
  return data;
}

double max_escape_rate(const Polynomial& f, double tol) { return escape_data(f, tol).max_rate; }

std::vector<Complex> preimages(const Polynomial& f, Complex y) {
  Coeffs low(f.low().begin(), f.low().end());
  low[0] -= y;
  return solve_roots(low);
}

namespace {

std::size_t checked_power(int d, int n, std::size_t cap) {
  if (n < 1) throw InvalidArgument("polycore", "iterate order must be at least 1");
  std::size_t total = 1;
  for (int i = 0; i < n; ++i) {
    total *= static_cast<std::size_t>(d);
    if (total > cap)
      throw CapExceeded("d^n exceeds the configured cap of " + std::to_string(cap));
  }
  return total;
}

Complex iterate(const Polynomial& f, Complex z, int n) {
  for (int i = 0; i < n; ++i) z = f(z);
  return z;
}

}  // namespace

IterateRoots roots_of_iterate(const Polynomial& f, int n, std::size_t cap) {
  const std::size_t total = checked_power(f.degree(), n, cap);
  std::vector<Complex> level = preimages(f, Complex{});
  for (int step = 1; step < n; ++step) {
    std::vector<Complex> next;
    next.reserve(level.size() * static_cast<std::size_t>(f.degree()));
    for (const auto& y : level) {
      auto pre = preimages(f, y);
      next.insert(next.end(), pre.begin(), pre.end());
    }
    level = std::move(next);
  }
  IterateRoots out;
  out.roots = std::move(level);
  if (out.roots.size() != total) throw RootFindingFailed("lost roots while pulling back");
  out.residuals.reserve(total);
  for (const auto& r : out.roots) out.residuals.push_back(std::abs(iterate(f, r, n)));
  return out;
}

void projective_normalize(std::vector<Complex>& v) {
  double m = 0.0;
  for (const auto& x : v) m = std::max(m, std::abs(x));
  if (m == 0.0) return;
  for (auto& x : v) x /= m;
}

std::vector<Complex> iterate_coefficients(const Polynomial& f, int n, std::size_t cap) {
  checked_power(f.degree(), n, cap);
  const auto a = f.low();
  const int d = f.degree();
  // State: f^k = P / b with the pair (P, b) normalized projectively.
  std::vector<Complex> state(a.begin(), a.end());
  state.push_back(1.0);
  projective_normalize(state);
  for (int k = 1; k < n; ++k) {
    const Complex b = state.back();
    const Coeffs p(state.begin(), state.end() - 1);
    std::vector<Complex> bpow(static_cast<std::size_t>(d) + 1, 1.0);
    for (int i = 1; i <= d; ++i) bpow[static_cast<std::size_t>(i)] = bpow[static_cast<std::size_t>(i) - 1] * b;
    Coeffs acc{a[static_cast<std::size_t>(d)]};
    for (int j = d - 1; j >= 0; --j) {
      acc = multiply(acc, p);
      acc[0] += a[static_cast<std::size_t>(j)] * bpow[static_cast<std::size_t>(d - j)];
    }
    state.assign(acc.begin(), acc.end());
    state.push_back(bpow[static_cast<std::size_t>(d)]);
    projective_normalize(state);
  }
  // Reorder to (a_D : ... : a_0 : b).
  std::vector<Complex> out(state.rbegin() + 1, state.rend());
  out.push_back(state.back());
  return out;
}

}  // namespace polytree
