#include "polytree/finite_determination.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "polytree/errors.hpp"
#include "polytree/sublevel.hpp"

namespace polytree {

Polynomial auto_representative(const Polynomial& f) {
  const int d = f.degree();
  int depth = 1;
  for (long n = d; n < 256; n *= d) ++depth;
  const SeedSet seeds = build_seeds(f, depth);
  std::vector<std::uint32_t> all(seeds.points.size());
  std::iota(all.begin(), all.end(), 0u);
  const Complex c = seeds.centroid(all);
  double r = 0.0;
  for (const auto& z : seeds.points) r = std::max(r, std::abs(z - c));
  if (!(r > 0.0)) throw InvalidArgument("gitstab", "seed cloud has zero radius");
  return affine_conjugate(f, c, Complex(1.0 / r, 0.0));
}

std::vector<FamilyMember> choose_representatives(const FamilySpec& spec, Representative rep) {
  auto members = sample_members(spec);
  if (rep == Representative::Auto)
    for (auto& m : members) m.f = auto_representative(m.f);
  return members;
}

namespace {

BigInt power(int d, int n) {
  BigInt r = 1;
  for (int i = 0; i < n; ++i) r *= d;
  return r;
}

std::string rational_text(const Rational& r) {
  std::ostringstream os;
  os << boost::multiprecision::numerator(r) << "/" << boost::multiprecision::denominator(r);
  return os.str();
}

// Mass bounds of the even/odd criterion for g_m (atoms already merged by
// location, so each atom is one (a:b) class).
bool mass_inequalities(const std::vector<Atom>& atoms, int d, int m, int N, std::string& detail) {
  const BigInt Dm = power(d, m), DN = power(d, N);
  const Rational half = Rational(Dm) / 2;
  bool ok = true;
  std::ostringstream os;
  for (const auto& a : atoms) {
    const Rational e = a.mass * Dm;
    bool holds;
    if (d % 2 == 0) {
      holds = a.location.infinite ? e < half : e <= half;
    } else if (a.location.infinite) {
      holds = e <= Rational(Dm - 1) / 2;
    } else {
      const Rational eN = a.mass * DN;
      const bool divisible = boost::multiprecision::denominator(eN) == 1 &&
                             boost::multiprecision::numerator(eN) % d == 0;
      holds = e <= Rational(Dm + 1) / 2 && divisible && e < half;
    }
    if (!holds) {
      ok = false;
      os << "atom " << to_string(a.location) << " carries " << rational_text(e) << " of " << Dm << "; ";
    }
  }
  detail = ok ? "all atom masses within bounds" : os.str();
  return ok;
}

}  // namespace

TheoremTwoReport verify_finite_determination(const FamilySpec& spec, int extra, Representative rep,
                                             const LimitOptions& opts) {
  if (extra < 0) throw InvalidArgument("gitstab", "extra must be non-negative");
  TheoremTwoReport r;
  r.d = spec.degree();
  r.N = nd_bound(r.d);
  r.height_threshold = 1.0 / std::pow(static_cast<double>(r.d), r.N - 1);
  {
    const double lhs = std::pow((r.d - 1.0) / r.d, r.N - 1);
    r.steps.push_back({1, "choose N", true, 0.5 - lhs, "((d-1)/d)^(N-1) = " + std::to_string(lhs) + " < 1/2"});
  }

  const auto members = choose_representatives(spec, rep);
  const LimitMeasure lm = limit_measure(members, opts);
  r.regime = lm.regime.regime;
  r.atoms = lm.atoms;
  r.generation = lm.generation;
  for (const auto& s : lm.regime.evidence) r.normalized_heights.push_back(s.normalized_height);
  r.basepoint_height = lm.regime.evidence.back().normalized_height;

  const LimitIterate gN = limit_iterate(members, lm, r.N);
  const StabilityVerdict vN = stability(gN.point);
  const bool semistable = vN.tag != StabilityTag::Unstable;
  // Semistability of g_N is the hypothesis of the argument; when it fails
  // the next step tells whether the basepoint escaped (the expected cause)
  // or the representatives were badly chosen.
  r.steps.push_back({2, "limit g_N of the N-th iterates", true, gN.deviation,
                     "g_N = " + format_boundary(gN.point) + " is " + to_string(vN.tag)});

  const bool bounded = r.regime != Regime::EscapingBasepoint;
  {
    std::ostringstream os;
    os << "regime " << to_string(r.regime) << ", normalized base-to-basepoint distance "
       << lm.regime.evidence.back().distance;
    r.steps.push_back({3, "basepoint heights bounded", bounded, -lm.regime.evidence.back().distance, os.str()});
  }
  if (!bounded) {
    r.unstable_witness = gN.point;
    r.steps.back().detail += "; g_N = " + format_boundary(gN.point) + " is " + to_string(vN.tag);
    r.pass = false;
    return r;
  }
  if (!semistable)
    throw RepresentativeNotSemistable("g_N = " + format_boundary(gN.point) +
                                      " is unstable for these representatives; rescale the family");

  {
    std::ostringstream os;
    os << "H(p) = " << r.basepoint_height << " vs 1/d^(N-1) = " << r.height_threshold;
    r.steps.push_back({4, "H(p) > 1/d^(N-1)", r.basepoint_height > r.height_threshold,
                       r.basepoint_height - r.height_threshold, os.str()});
  }

  bool products = true, inequalities = true, all_stable = true;
  std::string product_detail = "product form matches the coefficient limit", ineq_detail;
  for (int m = r.N; m <= r.N + extra; ++m) {
    IterateCheck c;
    c.m = m;
    try {
      const LimitIterate g = m == r.N ? gN : limit_iterate(members, lm, m);
      c.g = g.point;
      c.deviation = g.deviation;
    } catch (const ExtrapolationMismatch& e) {
      products = false;
      c.deviation = e.deviation();
      c.g = product_form(lm, m);
      product_detail = "m = " + std::to_string(m) + ": " + e.what();
    }
    c.verdict = stability(c.g);
    std::string detail;
    c.inequalities = mass_inequalities(lm.atoms, r.d, m, r.N, detail);
    if (!c.inequalities) {
      inequalities = false;
      ineq_detail += "m = " + std::to_string(m) + ": " + detail;
    }
    if (c.verdict.tag != StabilityTag::Stable) {
      all_stable = false;
      if (!r.unstable_witness && c.verdict.tag == StabilityTag::Unstable) r.unstable_witness = c.g;
    }
    r.iterates.push_back(c);
  }
  r.steps.push_back({5, "g_m is the product over components", products, 0.0, product_detail});
  const int parity_step = r.d % 2 == 0 ? 6 : 7;
  r.steps.push_back({parity_step, r.d % 2 == 0 ? "even degree mass bounds" : "odd degree mass bounds and divisibility",
                     inequalities && all_stable, 0.0,
                     inequalities ? (all_stable ? "every g_m is Stable" : "some g_m is not Stable") : ineq_detail});
  const bool determined = products && inequalities && all_stable;
  r.steps.push_back({8, "g_m for m > N determined by the tree data", determined, 0.0,
                     "checked on the sampled family for m = N.." + std::to_string(r.N + extra)});

  r.pass = std::all_of(r.steps.begin(), r.steps.end(), [](const StepResult& s) { return s.pass; });
  return r;
}

}  // namespace polytree
