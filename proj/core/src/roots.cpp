#include "polytree/roots.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "polytree/errors.hpp"

namespace polytree {
namespace {

// Newton correction p(z)/p'(z), evaluated on the reversed polynomial when
// |z| > 1 so large roots do not overflow.
Complex newton_ratio(std::span<const Complex> low, std::span<const Complex> reversed, Complex z) {
  const double n = static_cast<double>(low.size() - 1);
  if (std::abs(z) <= 1.0) {
    auto [p, dp] = horner_with_derivative(low, z);
    if (dp == Complex{}) return p == Complex{} ? Complex{} : Complex{std::numeric_limits<double>::infinity(), 0.0};
    return p / dp;
  }
  const Complex y = 1.0 / z;
  auto [q, dq] = horner_with_derivative(reversed, y);
  const Complex denom = n * q - y * dq;
  if (denom == Complex{}) return q == Complex{} ? Complex{} : Complex{std::numeric_limits<double>::infinity(), 0.0};
  return z * q / denom;
}

std::vector<Complex> initial_guesses(std::span<const Complex> low) {
  const std::size_t n = low.size() - 1;
  // Upper convex hull of (k, log|a_k|) over nonzero coefficients.
  std::vector<std::pair<double, double>> pts;
  for (std::size_t k = 0; k <= n; ++k)
    if (low[k] != Complex{}) pts.emplace_back(static_cast<double>(k), std::log(std::abs(low[k])));
  std::vector<std::pair<double, double>> hull;
  for (const auto& p : pts) {
    while (hull.size() >= 2) {
      const auto& a = hull[hull.size() - 2];
      const auto& b = hull[hull.size() - 1];
      const double cross = (b.first - a.first) * (p.second - a.second) - (b.second - a.second) * (p.first - a.first);
      if (cross >= 0.0) hull.pop_back();
      else break;
    }
    hull.push_back(p);
  }
  std::vector<Complex> guesses;
  guesses.reserve(n);
  const double offset = 0.4;
  for (std::size_t s = 0; s + 1 < hull.size(); ++s) {
    const int count = static_cast<int>(hull[s + 1].first - hull[s].first);
    const double radius = std::exp((hull[s].second - hull[s + 1].second) / count);
    for (int t = 0; t < count; ++t) {
      const double angle = 2.0 * std::numbers::pi * (t + 0.5 * s) / count + offset;
      guesses.push_back(std::polar(radius, angle));
    }
  }
  return guesses;
}

std::vector<Complex> aberth(std::span<const Complex> low, const RootSolveOptions& opts) {
  const std::size_t n = low.size() - 1;
  Coeffs reversed(low.rbegin(), low.rend());
  std::vector<Complex> z = initial_guesses(low);
  std::vector<bool> done(n, false);
  for (int iter = 0; iter < opts.max_iterations; ++iter) {
    bool all_done = true;
    for (std::size_t k = 0; k < n; ++k) {
      if (done[k]) continue;
      const Complex ratio = newton_ratio(low, reversed, z[k]);
      if (ratio == Complex{}) {
        done[k] = true;
        continue;
      }
      Complex sum{};
      for (std::size_t j = 0; j < n; ++j)
        if (j != k) sum += 1.0 / (z[k] - z[j]);
      Complex step = ratio / (1.0 - ratio * sum);
      if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) step = ratio;
      if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) {
        done[k] = true;
        continue;
      }
      z[k] -= step;
      if (std::abs(step) <= opts.step_tol * std::max(std::abs(z[k]), 1e-300)) done[k] = true;
      else all_done = false;
    }
    if (all_done) break;
  }
  // Newton polishing; keep a step only if it lowers the residual.
  // Roots inside a cluster are skipped: Newton would drag them toward the
  // cluster and spoil the symmetric spread that makes their mean accurate.
  for (std::size_t k = 0; k < n; ++k) {
    auto& r = z[k];
    double nearest = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < n; ++j)
      if (j != k) nearest = std::min(nearest, std::abs(r - z[j]));
    for (int s = 0; s < opts.polish_steps; ++s) {
      const Complex ratio = newton_ratio(low, reversed, r);
      if (!std::isfinite(ratio.real()) || !std::isfinite(ratio.imag()) || ratio == Complex{}) break;
      if (std::abs(ratio) > 0.01 * nearest) break;
      const Complex candidate = r - ratio;
      if (std::abs(horner(low, candidate)) < std::abs(horner(low, r))) r = candidate;
      else break;
    }
  }
  return z;
}

}  // namespace

std::vector<Complex> solve_roots(std::span<const Complex> input, const RootSolveOptions& opts) {
  Coeffs low(input.begin(), input.end());
  trim(low);
  if (low.size() == 1) {
    if (low[0] == Complex{}) throw InvalidArgument("polycore", "cannot solve the zero polynomial");
    return {};
  }
  std::vector<Complex> roots;
  std::size_t zeros = 0;
  while (zeros < low.size() - 1 && low[zeros] == Complex{}) ++zeros;
  roots.assign(zeros, Complex{});
  low.erase(low.begin(), low.begin() + static_cast<std::ptrdiff_t>(zeros));
  const std::size_t n = low.size() - 1;
  if (n == 1) {
    roots.push_back(-low[0] / low[1]);
  } else if (n == 2) {
    const Complex a = low[2], b = low[1], c = low[0];
    const Complex disc = std::sqrt(b * b - 4.0 * a * c);
    const Complex q = -0.5 * (b + (std::real(std::conj(b) * disc) >= 0.0 ? disc : -disc));
    if (q == Complex{}) {
      roots.push_back(Complex{});
      roots.push_back(Complex{});
    } else {
      roots.push_back(q / a);
      roots.push_back(c / q);
    }
  } else if (n > 2) {
    auto rest = aberth(low, opts);
    roots.insert(roots.end(), rest.begin(), rest.end());
  }
  for (const auto& r : roots)
    if (!std::isfinite(r.real()) || !std::isfinite(r.imag()))
      throw RootFindingFailed("root iteration produced a non-finite value");
  return roots;
}

namespace {

std::vector<std::vector<std::size_t>> single_linkage(std::span<const Complex> pts, double tol) {
  const std::size_t n = pts.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (std::abs(pts[i] - pts[j]) <= tol) parent[find(i)] = find(j);
  std::vector<std::vector<std::size_t>> groups;
  std::vector<std::ptrdiff_t> slot(n, -1);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t r = find(i);
    if (slot[r] < 0) {
      slot[r] = static_cast<std::ptrdiff_t>(groups.size());
      groups.emplace_back();
    }
    groups[static_cast<std::size_t>(slot[r])].push_back(i);
  }
  return groups;
}

std::vector<RootCluster> to_clusters(std::span<const Complex> roots,
                                     const std::vector<std::vector<std::size_t>>& groups) {
  std::vector<RootCluster> out;
  for (const auto& g : groups) {
    Complex sum{};
    for (auto i : g) sum += roots[i];
    out.push_back({sum / static_cast<double>(g.size()), static_cast<int>(g.size())});
  }
  std::sort(out.begin(), out.end(), [](const RootCluster& a, const RootCluster& b) {
    if (a.center.real() != b.center.real()) return a.center.real() < b.center.real();
    return a.center.imag() < b.center.imag();
  });
  return out;
}

// A root of multiplicity m is a simple root of the (m-1)-th derivative, so
// Newton there recovers the center far better than the cluster mean.
void refine_centers(std::span<const Complex> low, std::vector<RootCluster>& clusters) {
  for (auto& cl : clusters) {
    if (cl.multiplicity < 2) continue;
    Coeffs q(low.begin(), low.end());
    for (int i = 1; i < cl.multiplicity; ++i) q = derivative(q);
    for (int step = 0; step < 20; ++step) {
      auto [v, dv] = horner_with_derivative(q, cl.center);
      if (dv == Complex{}) break;
      const Complex next = cl.center - v / dv;
      if (!(std::abs(horner(q, next)) < std::abs(v))) break;
      cl.center = next;
    }
  }
}

bool validate(std::span<const Complex> low, const std::vector<RootCluster>& clusters) {
  const double delta = 1e-6;
  for (std::size_t c = 0; c < clusters.size(); ++c) {
    const auto& cl = clusters[c];
    double rho = 1.0 + std::abs(cl.center);
    for (std::size_t o = 0; o < clusters.size(); ++o)
      if (o != c) rho = std::min(rho, 0.5 * std::abs(cl.center - clusters[o].center));
    rho = std::max(rho, 1e-300);
    const Coeffs t = taylor_shift(low, cl.center);
    const auto m = static_cast<std::size_t>(cl.multiplicity);
    if (m >= t.size()) return false;
    // Rounding floor of the shifted coefficients: a split multiple root
    // leaves lower coefficients that are pure noise, not small values.
    double noise = 0.0, power = 1.0;
    for (const auto& a : low) {
      noise += std::abs(a) * power;
      power *= 1.0 + std::abs(cl.center);
    }
    noise *= 64.0 * std::numeric_limits<double>::epsilon();
    const double top = std::abs(t[m]) * std::pow(rho, static_cast<double>(m));
    double lower = 0.0;
    for (std::size_t j = 0; j < m; ++j) lower += (std::abs(t[j]) + noise) * std::pow(rho, static_cast<double>(j));
    if (!(lower <= delta * top)) return false;
  }
  return true;
}

}  // namespace

ClusterResult cluster_roots(std::span<const Complex> input, std::span<const Complex> roots) {
  Coeffs low(input.begin(), input.end());
  trim(low);
  ClusterResult result;
  if (roots.empty()) return result;
  double scale = 1.0;
  for (const auto& r : roots) scale = std::max(scale, 1.0 + std::abs(r));
  static constexpr double ladder[] = {1e-12, 1e-10, 1e-8, 1e-6, 1e-5, 1e-4, 1e-3, 1e-2, 3e-2, 1e-1};
  for (double rel : ladder) {
    auto clusters = to_clusters(roots, single_linkage(roots, rel * scale));
    refine_centers(low, clusters);
    if (validate(low, clusters)) {
      result.clusters = std::move(clusters);
      result.tolerance = rel;
      return result;
    }
  }
  result.ambiguous = true;
  result.tolerance = 1e-6;
  result.clusters = to_clusters(roots, single_linkage(roots, 1e-6 * scale));
  result.alternative = to_clusters(roots, single_linkage(roots, ladder[std::size(ladder) - 1] * scale));
  refine_centers(low, result.clusters);
  refine_centers(low, result.alternative);
  return result;
}

ClusterResult roots_with_multiplicity(std::span<const Complex> low) {
  const auto roots = solve_roots(low);
  return cluster_roots(low, roots);
}

}  // namespace polytree
