#include <gtest/gtest.h>

#include "polytree/build_tree.hpp"
#include "polytree/degeneration.hpp"
#include "polytree/errors.hpp"
#include "polytree/isomorphism.hpp"
#include "support/oracles.hpp"

using namespace polytree;

namespace {

const char* kSplit = "t,0,-t";
const char* kSplitSchedule = "10^j, j=0..6";
const char* kCubic = "t,1,0,0";
const char* kCubicSchedule = "1e-2*10^-j, j=0..5";
// lambda (z^2 - t) with lambda = 10^-t.
const char* kEscaping = "10^t,0,-t*10^-t";
const char* kEscapingSchedule = "5*j, j=1..8";

BigInt ipow(int d, int n) {
  BigInt p = 1;
  for (int i = 0; i < n; ++i) p *= d;
  return p;
}

void expect_exact_masses(const LimitMeasure& lm) {
  Rational total = 0;
  const BigInt dn = ipow(lm.d, lm.generation);
  for (const auto& a : lm.atoms) {
    EXPECT_GT(a.mass, 0);
    EXPECT_EQ(dn % boost::multiprecision::denominator(a.mass), 0) << a.mass;
    total += a.mass;
  }
  EXPECT_EQ(total, 1);
}

std::vector<std::pair<SpherePoint, double>> as_doubles(const LimitMeasure& lm) {
  std::vector<std::pair<SpherePoint, double>> out;
  for (const auto& a : lm.atoms) out.emplace_back(a.location, static_cast<double>(a.mass));
  return out;
}

// A point of no special orbit significance.
const Complex kGeneric{0.3137, 0.2718};

}  // namespace

TEST(Regime, Examples) {
  EXPECT_EQ(classify_regime(parse_family(kSplit, kSplitSchedule)).regime, Regime::InteriorBasepoint);
  EXPECT_EQ(classify_regime(parse_family(kCubic, kCubicSchedule)).regime, Regime::JuliaBasepoint);
  const auto esc = classify_regime(parse_family(kEscaping, kEscapingSchedule));
  EXPECT_EQ(esc.regime, Regime::EscapingBasepoint);
  for (std::size_t i = 1; i < esc.evidence.size(); ++i) EXPECT_GT(esc.evidence[i].distance, esc.evidence[i - 1].distance);
}

TEST(Regime, LargeButConvergingDistanceIsInterior) {
  // lambda (z^2 - t) with lambda = t^-6: H/M tends to 12, a trunk point.
  const FamilySpec spec = parse_family("t^6,0,-t^-5", "10^j, j=1..7");
  const auto rc = classify_regime(spec);
  EXPECT_EQ(rc.regime, Regime::InteriorBasepoint);
  EXPECT_NEAR(rc.evidence.back().normalized_height, 12.0, 1e-3);
  // Everything below the trunk point collapses onto the filled Julia set near 0.
  const LimitMeasure lm = limit_measure(spec);
  ASSERT_EQ(lm.atoms.size(), 1u);
  EXPECT_FALSE(lm.atoms[0].location.infinite);
  EXPECT_LT(std::abs(lm.atoms[0].location.value), 1e-6);
  EXPECT_EQ(lm.atoms[0].mass, 1);
}

TEST(Regime, TranslatedQuadraticStaysInTheTree) {
  // Conjugate to w^2 - c; the unit circle sits near w = c^2 whose height is
  // about 4M, a bounded normalized height.
  const auto rc = classify_regime(parse_family("1,2*t^2,t^4-t-t^2", "10^j, j=1..4"));
  EXPECT_EQ(rc.regime, Regime::InteriorBasepoint);
  EXPECT_NEAR(rc.evidence.back().normalized_height, 4.0, 0.01);
}

TEST(Regime, NormalizedHeightTrends) {
  const auto split = classify_regime(parse_family(kSplit, kSplitSchedule));
  // The unit circle reaches f^-1(-2c), so the excess is about log 2 / log c.
  for (std::size_t i = 2; i < split.evidence.size(); ++i)
    EXPECT_LT(split.evidence[i].normalized_height, split.evidence[i - 1].normalized_height);
  EXPECT_NEAR(split.evidence.back().normalized_height, 1.0, 0.1);
  const auto cubic = classify_regime(parse_family(kCubic, kCubicSchedule));
  for (std::size_t i = 1; i < cubic.evidence.size(); ++i)
    EXPECT_LT(cubic.evidence[i].normalized_height, cubic.evidence[i - 1].normalized_height);
}

TEST(Regime, BoundedFamiliesRejected) {
  EXPECT_THROW(classify_regime(parse_family("1,0,t", "2+10^-j, j=0..5")), NotDivergent);
  EXPECT_THROW(classify_regime(parse_family("1,0,t", "10^-j, j=0..5")), NotDivergent);
}

TEST(LimitMeasure, SplitQuadraticHasTwoHalfAtoms) {
  const LimitMeasure lm = limit_measure(parse_family(kSplit, kSplitSchedule));
  ASSERT_EQ(lm.atoms.size(), 2u);
  std::vector<double> xs;
  for (const auto& a : lm.atoms) {
    EXPECT_EQ(a.mass, Rational(1, 2));
    ASSERT_FALSE(a.location.infinite);
    xs.push_back(a.location.value.real());
  }
  std::sort(xs.begin(), xs.end());
  EXPECT_LT(chordal_distance(Complex(xs[0], 0), Complex(-1, 0)), 0.02);
  EXPECT_LT(chordal_distance(Complex(xs[1], 0), Complex(1, 0)), 0.02);
  expect_exact_masses(lm);
}

TEST(LimitMeasure, CubicEscapesToInfinity) {
  const LimitMeasure lm = limit_measure(parse_family(kCubic, kCubicSchedule));
  ASSERT_EQ(lm.atoms.size(), 1u);
  EXPECT_TRUE(lm.atoms[0].location.infinite);
  EXPECT_EQ(lm.atoms[0].mass, 1);
  expect_exact_masses(lm);
}

TEST(LimitMeasure, MatchesPreimageOracle) {
  const FamilySpec spec = parse_family(kSplit, kSplitSchedule);
  const LimitMeasure lm = limit_measure(spec);
  const Polynomial last = sample_members(spec).back().f;
  const auto cmp = oracle::compare_measures(as_doubles(lm), oracle::preimage_measure(last, kGeneric, 8), 0.05);
  EXPECT_LT(cmp.location, 0.02);
  EXPECT_LT(cmp.mass, 0.02);
}

TEST(LimitMeasure, CubicOracleMassDriftsToInfinity) {
  // Preimages of the far branch need a few square roots to come back from
  // |z| ~ 1/eps, so the finite mass of a member decays like (2/3)^(log log 1/eps).
  const auto members = sample_members(parse_family(kCubic, kCubicSchedule));
  double first = 0.0, prev = 1.0;
  for (const auto& m : members) {
    double finite = 0.0;
    for (const auto& c : oracle::preimage_measure(m.f, kGeneric, 8))
      if (!c.location.infinite) finite += c.mass;
    EXPECT_LE(finite, prev + 1e-12) << "j=" << m.j;
    if (&m == &members.front()) first = finite;
    prev = finite;
  }
  EXPECT_LT(prev, first);
}

TEST(LimitMeasure, RescaledCubicAtomsMatchValence) {
  // lambda = eps^(2^-i) puts the unit circle on the level of v_i along the
  // degree-2 branch; v_1 has valence 4 and v_2 valence 2*4 - 2.
  const int expected[] = {0, 4, 6};
  for (int i : {1, 2}) {
    const std::string lambda = "t^(2^-" + std::to_string(i) + ")";
    const LimitMeasure lm = limit_measure(parse_family(kCubic, kCubicSchedule, lambda));
    EXPECT_EQ(lm.regime.regime, Regime::InteriorBasepoint);
    EXPECT_EQ(static_cast<int>(lm.atoms.size()), expected[i]) << "v_" << i;
    EXPECT_EQ(lm.generation, i + 1);
    expect_exact_masses(lm);
  }
}

TEST(LimitMeasure, TruncationsAndWeightsStabilize) {
  const auto members = sample_members(parse_family(kSplit, kSplitSchedule));
  const std::size_t n = members.size();
  PointedTree a = pointed_member_tree(members[n - 2].f, 3);
  PointedTree b = pointed_member_tree(members[n - 1].f, 3);
  const TreePoint pa = snap_to_vertex(a.tree, a.point, 0.15);
  const TreePoint pb = snap_to_vertex(b.tree, b.point, 0.15);
  ASSERT_EQ(pa.kind, TreePoint::Kind::Vertex);
  EXPECT_TRUE(truncation_isomorphic(a.tree, pa, b.tree, pb, 3).has_value());
  const auto wa = weights_at(a.tree, measure_of(a.tree), pa, 0.05);
  const auto wb = weights_at(b.tree, measure_of(b.tree), pb, 0.05);
  EXPECT_EQ(wa, wb);
}

TEST(LimitMeasure, ComponentsShrinkAlongSchedule) {
  const auto members = sample_members(parse_family(kSplit, kSplitSchedule));
  double prev = 3.0;
  for (const auto& m : members) {
    if (m.j == 0) continue;  // z^2 - 1 has a connected Julia set
    PointedTree pt = pointed_member_tree(m.f, 1);
    double widest = 0.0;
    for (int e : pt.tree.vertex(pt.tree.base).child_edges)
      widest = std::max(widest, component_region(pt.tree, e).chordal_diameter);
    EXPECT_LT(widest, prev) << "j=" << m.j;
    prev = widest;
  }
  EXPECT_LT(prev, 0.01);
}

TEST(ZeroCount, CubicComponents) {
  const Polynomial f = parse_polynomial("0.01,1,0,0");
  auto [tree, measure] = build_tree(f, 1);
  for (int e : tree.vertex(tree.base).child_edges) {
    const ZeroCount z = count_zeros_in_component(f, 1, tree, measure, e);
    EXPECT_FALSE(z.ambiguous);
    EXPECT_EQ(z.count, tree.edge(e).degree == 2 ? 2 : 1);
    EXPECT_EQ(Rational(z.count), z.expected);
  }
  const ZeroCount top = count_zeros_in_component(f, 2, tree, measure, tree.top_edge);
  EXPECT_EQ(top.count, 0);
  EXPECT_EQ(top.expected, 0);
}

TEST(ZeroCount, GoldenQuadraticEveryLevel) {
  const Polynomial f = parse_polynomial("1,0,-6");
  auto [tree, measure] = build_tree(f, 3);
  for (int n = 1; n <= 3; ++n)
    for (const auto& e : tree.edges) {
      if (e.trunk || e.generation > n) continue;
      const ZeroCount z = count_zeros_in_component(f, n, tree, measure, e.id);
      EXPECT_FALSE(z.ambiguous);
      EXPECT_EQ(Rational(z.count), z.expected) << "n=" << n << " edge " << e.id;
    }
}

TEST(LimitIterate, SplitQuadratic) {
  const FamilySpec spec = parse_family(kSplit, kSplitSchedule);
  const LimitIterate one = limit_iterate(spec, 1);
  EXPECT_LT(projective_distance(projective_coefficients(one.point), {Complex(1), 0, Complex(-1), 0}), 1e-3);
  EXPECT_LT(one.deviation, 1e-3);
  const LimitIterate two = limit_iterate(spec, 2);
  EXPECT_LT(projective_distance(projective_coefficients(two.point), {Complex(1), 0, Complex(-2), 0, Complex(1), 0}),
            1e-3);
  EXPECT_EQ(two.point.k, 0);
}

TEST(LimitIterate, EscapingFamilyIsAPower) {
  const FamilySpec spec = parse_family(kEscaping, kEscapingSchedule);
  for (int m : {1, 2}) {
    const LimitIterate li = limit_iterate(spec, m);
    const auto c = projective_coefficients(li.point);
    // (z^(2^m) : 0): only the leading coefficient survives.
    ASSERT_EQ(static_cast<int>(c.size()), (1 << m) + 2);
    EXPECT_GT(std::abs(c[0]), 0.5);
    for (std::size_t i = 1; i < c.size(); ++i) EXPECT_LT(std::abs(c[i]), 1e-3) << i;
  }
}

TEST(KBound, CubicEquality) {
  const FamilySpec spec = parse_family(kCubic, kCubicSchedule);
  for (int N : {1, 2, 3}) {
    const KBoundReport r = verify_kbound(spec, N);
    const int expect = static_cast<int>(std::pow(3, N) - std::pow(2, N));
    EXPECT_EQ(r.k, expect);
    EXPECT_EQ(r.bound, expect);
    EXPECT_TRUE(r.pass);
    EXPECT_TRUE(r.equality);
  }
}

TEST(KBound, SplitQuadraticHasNoEscapingMass) {
  const KBoundReport r = verify_kbound(parse_family(kSplit, kSplitSchedule), 3);
  EXPECT_EQ(r.k, 0);
  EXPECT_EQ(r.mass, 0);
  EXPECT_TRUE(r.pass);
}

TEST(KBound, WrongMassIsFlagged) {
  // Labeling the quadratic core as unbounded inflates the bound past k.
  const KBoundReport bad = kbound_check(5, Rational(1), 3, 2);
  EXPECT_FALSE(bad.pass);
  const KBoundReport good = kbound_check(5, Rational(5, 9), 3, 2);
  EXPECT_TRUE(good.pass);
  EXPECT_TRUE(good.equality);
}
