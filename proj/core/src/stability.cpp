#include "polytree/stability.hpp"

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>

#include "polytree/errors.hpp"

namespace polytree {

std::string to_string(StabilityTag t) {
  switch (t) {
    case StabilityTag::Stable: return "Stable";
    case StabilityTag::StrictlySemistable: return "StrictlySemistable";
    case StabilityTag::Unstable: return "Unstable";
  }
  return "Unstable";
}

namespace {

// Conditions written with doubled quantities so odd D stays in integers:
// even D: stable = semistable: 2 deg > D, 2 mult <= D.
// odd D: stable: 2 deg > D+1, 2 mult < D+1; semistable: 2 deg >= D+1, 2 mult <= D+1.
bool degree_ok(int D, int deg, bool strict) {
  if (D % 2 == 0) return 2 * deg > D;
  return strict ? 2 * deg > D + 1 : 2 * deg >= D + 1;
}

bool mult_ok(int D, int mult, bool strict) {
  if (D % 2 == 0) return 2 * mult <= D;
  return strict ? 2 * mult < D + 1 : 2 * mult <= D + 1;
}

int severity(StabilityTag t) {
  return t == StabilityTag::Stable ? 0 : t == StabilityTag::StrictlySemistable ? 1 : 2;
}

StabilityTag verdict(int D, int deg, const std::vector<RootCluster>& zeros, bool b_zero,
                     std::vector<StabilityWitness>* witnesses) {
  bool stable = degree_ok(D, deg, true), semi = degree_ok(D, deg, false);
  const std::string half = D % 2 == 0 ? "D/2" : "(D+1)/2";
  if (witnesses && !stable)
    witnesses->push_back({"deg P(z,1) > " + half, {}, deg, stable, semi});
  if (b_zero) {
    for (const auto& z : zeros) {
      const bool s = mult_ok(D, z.multiplicity, true), ss = mult_ok(D, z.multiplicity, false);
      if (witnesses && !s)
        witnesses->push_back({"mult " + std::string(D % 2 == 0 ? "<=" : "<") + " " + half, z.center, z.multiplicity, s, ss});
      stable = stable && s;
      semi = semi && ss;
    }
  }
  if (stable) return StabilityTag::Stable;
  return semi ? StabilityTag::StrictlySemistable : StabilityTag::Unstable;
}

}  // namespace

StabilityTag stability_from_counts(int D, int degree_p, const std::vector<int>& multiplicities, bool b_zero) {
  std::vector<RootCluster> zeros;
  for (int m : multiplicities) zeros.push_back({Complex{}, m});
  return verdict(D, degree_p, zeros, b_zero, nullptr);
}

StabilityVerdict stability(const BoundaryPoint& bp, int D) {
  if (D != bp.D) throw InvalidArgument("gitstab", "ambient degree does not match the point");
  validate(bp);
  StabilityVerdict out;
  out.degree_p = bp.degree_p();
  const bool b_zero = bp.b == Complex{};
  ClusterResult cr;
  if (out.degree_p >= 1) {
    cr = roots_with_multiplicity(bp.p);
  }
  out.zeros = cr.clusters;
  out.tag = verdict(D, out.degree_p, cr.clusters, b_zero, &out.witnesses);
  if (cr.ambiguous) {
    out.ambiguous = true;
    std::vector<StabilityWitness> alt_w;
    const StabilityTag alt = verdict(D, out.degree_p, cr.alternative, b_zero, &alt_w);
    if (severity(alt) > severity(out.tag)) {
      out.alternative_tag = out.tag;
      out.tag = alt;
      out.zeros = cr.alternative;
      out.witnesses = alt_w;
    } else {
      out.alternative_tag = alt;
    }
  }
  return out;
}

StabilityVerdict stability(const BoundaryPoint& bp) { return stability(bp, bp.D); }

bool nd_inequality(int d, int N) {
  if (d < 2 || N < 1) throw InvalidArgument("gitstab", "need d >= 2 and N >= 1");
  using boost::multiprecision::cpp_int;
  cpp_int a = 2, b = 1;
  for (int i = 0; i < N - 1; ++i) {
    a *= d - 1;
    b *= d;
  }
  return a < b;
}

int nd_bound(int d) {
  if (d < 2) throw InvalidArgument("gitstab", "degree must be at least 2");
  int N = 1;
  while (!nd_inequality(d, N)) ++N;
  return N;
}

}  // namespace polytree
