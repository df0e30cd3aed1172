#pragma once

#include <optional>
#include <string>
#include <vector>

#include "polytree/boundary.hpp"
#include "polytree/family.hpp"
#include "polytree/pointed.hpp"
#include "polytree/sphere.hpp"

namespace polytree {

enum class Regime { InteriorBasepoint, JuliaBasepoint, EscapingBasepoint };
std::string to_string(Regime r);

/// Per-member numbers behind the regime decision.
struct MemberSummary {
  int j = 0;
  Complex t;
  double M = 0.0;
  double basepoint_height = 0.0;   // max of G on the unit circle, raw
  double normalized_height = 0.0;  // basepoint_height / M
  double distance = 0.0;           // |basepoint_height - M| / M
};

struct RegimeClassification {
  Regime regime = Regime::InteriorBasepoint;
  std::vector<MemberSummary> evidence;
  std::string reason;
};

MemberSummary summarize_member(const FamilyMember& member, int circle_samples = 4096);

/// The decision rule on precomputed summaries (schedule order). Throws
/// NotDivergent unless M grows by at least half over the schedule without
/// decreasing.
RegimeClassification classify_summaries(const std::vector<MemberSummary>& s);
RegimeClassification classify_regime(const FamilySpec& spec);
RegimeClassification classify_regime(const std::vector<FamilyMember>& members);

struct Atom {
  SpherePoint location;
  Rational mass;
};

struct LimitOptions {
  int depth = 2;               // truncation depth for the stabilization check
  double snap = 0.15;          // relative height window for snapping p to a vertex
  double snap_infinity = 0.05; // chordal distance below which atoms move to infinity
  double merge = 0.02;         // chordal single-linkage threshold for atoms
  ResolutionSpec resolution;
};

struct LimitMeasure {
  std::vector<Atom> atoms;  // positive masses summing to 1
  int generation = 0;       // N(p): every denominator divides d^N
  int d = 2;
  RegimeClassification regime;
};

/// Tree of one member built deep enough to contain its basepoint, with the
/// basepoint located (not snapped).
PointedTree pointed_member_tree(const Polynomial& f, int depth, const ResolutionSpec& res = {});

/// Moves p to an endpoint of its edge when its height is within `rel` of
/// that vertex height (relative to the vertex height).
TreePoint snap_to_vertex(const Tree& tree, const TreePoint& p, double rel);

/// Masses and region centroids of the components of the tree minus {p}
/// (p a vertex or edge point); the unbounded one is located at infinity.
std::vector<Atom> components_at(const Tree& tree, const TreeMeasure& measure, const TreePoint& p);

/// Single-linkage merge in the chordal metric with snapping to infinity;
/// zero masses are dropped and the result is ordered deterministically.
std::vector<Atom> cluster_atoms(std::vector<Atom> atoms, double merge, double snap_infinity);

LimitMeasure limit_measure(const FamilySpec& spec, const LimitOptions& opts = {});
/// Same on explicit members (schedule order), e.g. after a change of
/// representative.
LimitMeasure limit_measure(const std::vector<FamilyMember>& members, const LimitOptions& opts = {});

struct ZeroCount {
  int count = 0;
  bool ambiguous = false;  // some root sits on the component's boundary cells
  Rational expected;       // mass * d^n
};

/// Zeros of f^n inside the component of edge e. A trunk edge stands for
/// the unbounded component: expected and counted zeros are both 0.
ZeroCount count_zeros_in_component(const Polynomial& f, int n, const Tree& tree, const TreeMeasure& measure, int e);

struct LimitIterate {
  BoundaryPoint point;
  std::vector<Complex> extrapolated;  // projective limit of the coefficients
  double deviation = 0.0;             // product form vs extrapolation
  bool from_product = true;
};

/// Componentwise Aitken extrapolation of the last three normalized
/// coefficient vectors of f_t^m.
std::vector<Complex> extrapolate_iterates(const std::vector<Polynomial>& members, int m);

/// Projective limit of f_t^m. Throws ExtrapolationMismatch when the
/// product form and the coefficient extrapolation differ by more than 1e-3.
LimitIterate limit_iterate(const FamilySpec& spec, int m, const LimitOptions& opts = {});
LimitIterate limit_iterate(const std::vector<FamilyMember>& members, int m, const LimitOptions& opts = {});
/// Reuses a limit measure already computed for the same members.
LimitIterate limit_iterate(const std::vector<FamilyMember>& members, const LimitMeasure& lm, int m);
/// Product form from an already computed limit measure.
BoundaryPoint product_form(const LimitMeasure& lm, int m);

struct KBoundReport {
  int N = 0;
  int k = 0;          // power of w split off in the limit of f_t^N
  Rational mass;      // m_T(C_N)
  Rational bound;     // m_T(C_N) * d^N
  bool pass = false;
  bool equality = false;
};

/// The comparison itself, separated so wrong inputs can be fed in.
KBoundReport kbound_check(int k, const Rational& mass, int d, int N);

/// Mass of the unbounded component of the tree minus a small ball around
/// p(N), the point at height base/d^N on the way from p to infinity.
Rational unbounded_mass(Tree& tree, const TreePoint& p, int N);

KBoundReport verify_kbound(const FamilySpec& spec, int N, const LimitOptions& opts = {});
KBoundReport verify_kbound(const std::vector<FamilyMember>& members, int N, const LimitOptions& opts = {});

struct RegionSummary {
  bool contains_infinity = false;
  Complex bbox_lo, bbox_hi;
  std::vector<Complex> samples;
  double chordal_diameter = 0.0;
  double cell_size = 0.0;
};

/// Region of the plane over edge e's component.
RegionSummary component_region(const Tree& tree, int e);

}  // namespace polytree
