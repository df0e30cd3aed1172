#pragma once

#include <optional>
#include <string>
#include <vector>

#include "polytree/degeneration.hpp"
#include "polytree/stability.hpp"

namespace polytree {

enum class Representative {
  AsGiven,  // members exactly as sampled (lambda applied if the spec has one)
  Auto,     // conjugate each member so its seed cloud is centred with radius 1
};

struct StepResult {
  int step = 0;
  std::string name;
  bool pass = false;
  double margin = 0.0;  // signed slack of the inequality checked, when there is one
  std::string detail;
};

struct IterateCheck {
  int m = 0;
  BoundaryPoint g;
  double deviation = 0.0;  // product form vs coefficient extrapolation
  StabilityVerdict verdict;
  bool inequalities = false;  // mass bounds of the even/odd criterion
};

struct TheoremTwoReport {
  int d = 2;
  int N = 0;
  Regime regime = Regime::InteriorBasepoint;
  std::vector<double> normalized_heights;  // along the schedule
  double basepoint_height = 0.0;           // H(p), normalized, last member
  double height_threshold = 0.0;           // 1 / d^(N-1)
  std::vector<Atom> atoms;
  int generation = 0;
  std::vector<IterateCheck> iterates;      // m = N .. N + extra
  std::vector<StepResult> steps;
  std::optional<BoundaryPoint> unstable_witness;
  bool pass = false;
};

/// Conjugate f by phi(z) = (z - c) / r with c, r the centre and radius of
/// the backward orbit used to seed the tree.
Polynomial auto_representative(const Polynomial& f);
std::vector<FamilyMember> choose_representatives(const FamilySpec& spec, Representative rep);

/// Runs the finite-determination argument on a family: N = nd_bound(d),
/// then the height bound, the product form of g_m for m = N .. N + extra,
/// and the stability inequalities. Throws RepresentativeNotSemistable when
/// g_N is unstable although the basepoint stays bounded.
TheoremTwoReport verify_finite_determination(const FamilySpec& spec, int extra,
                                             Representative rep = Representative::AsGiven,
                                             const LimitOptions& opts = {});

}  // namespace polytree
