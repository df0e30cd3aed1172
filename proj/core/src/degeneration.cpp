#include "polytree/degeneration.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "polytree/build_tree.hpp"
#include "polytree/errors.hpp"
#include "polytree/isomorphism.hpp"

namespace polytree {

std::string to_string(Regime r) {
  switch (r) {
    case Regime::InteriorBasepoint: return "interior-basepoint";
    case Regime::JuliaBasepoint: return "julia-basepoint";
    case Regime::EscapingBasepoint: return "escaping-basepoint";
  }
  return "unknown";
}

MemberSummary summarize_member(const FamilyMember& member, int circle_samples) {
  MemberSummary s;
  s.j = member.j;
  s.t = member.t;
  const EscapeEvaluator ev(member.f);
  s.M = max_escape_rate(member.f);
  s.basepoint_height = circle_max(ev, circle_samples).value;
  if (s.M > 0.0) {
    s.normalized_height = s.basepoint_height / s.M;
    s.distance = std::abs(s.basepoint_height - s.M) / s.M;
  }
  return s;
}

RegimeClassification classify_summaries(const std::vector<MemberSummary>& s) {
  if (s.size() < 3) throw InvalidArgument("degeneration", "regime classification needs at least three members");
  for (std::size_t i = 1; i < s.size(); ++i)
    if (s[i].M < s[i - 1].M * (1.0 - 1e-6))
      throw NotDivergent("M decreases along the schedule (j=" + std::to_string(s[i].j) + ")");
  if (!(s.back().M > 1.5 * s.front().M) || !(s.back().M > 0.0))
    throw NotDivergent("M stays bounded over the schedule");

  RegimeClassification out;
  out.evidence = s;
  const auto& last = s.back();
  const auto& prev = s[s.size() - 2];
  std::ostringstream why;
  if (last.normalized_height < 0.05 && last.normalized_height < prev.normalized_height) {
    out.regime = Regime::JuliaBasepoint;
    why << "normalized basepoint height " << last.normalized_height << " < 0.05 and decreasing";
  } else if (last.distance > 10.0 && last.distance > 1.02 * prev.distance &&
             prev.distance > 1.02 * s[s.size() - 3].distance) {
    // Unbounded growth shows as a distance that keeps increasing; a large
    // but converging distance is still a point of the limit tree.
    out.regime = Regime::EscapingBasepoint;
    why << "normalized base-to-basepoint distance " << last.distance << " > 10 and still growing";
  } else {
    out.regime = Regime::InteriorBasepoint;
    why << "normalized basepoint height " << last.normalized_height << " stays in the tree";
  }
  out.reason = why.str();
  return out;
}

RegimeClassification classify_regime(const std::vector<FamilyMember>& members) {
  std::vector<MemberSummary> s;
  for (const auto& m : members) s.push_back(summarize_member(m));
  return classify_summaries(s);
}

RegimeClassification classify_regime(const FamilySpec& spec) { return classify_regime(sample_members(spec)); }

namespace {

const FamilyMember& last_member(const std::vector<FamilyMember>& members) {
  if (members.empty()) throw InvalidArgument("degeneration", "empty schedule");
  return members.back();
}

Complex seed_centroid(const Tree& tree, int e) {
  const auto& edge = tree.edge(e);
  if (edge.trunk || edge.seeds.empty()) {
    const auto& seeds = tree_seeds(tree);
    std::vector<std::uint32_t> all(seeds.points.size());
    std::iota(all.begin(), all.end(), 0u);
    return seeds.centroid(all);
  }
  return tree_seeds(tree).centroid(edge.seeds);
}

int containing_edge(const Tree& tree, const TreePoint& p) {
  switch (p.kind) {
    case TreePoint::Kind::Vertex: return tree.vertex(p.id).parent_edge;
    case TreePoint::Kind::Edge:
    case TreePoint::Kind::Truncated: return p.id;
    case TreePoint::Kind::JuliaEnd: break;
  }
  throw InvalidArgument("degeneration", "point has no edge above it");
}

struct MatchedAtoms {
  bool ok = true;
  double worst = 0.0;
};

MatchedAtoms compare_atoms(const std::vector<Atom>& a, const std::vector<Atom>& b, double tol) {
  MatchedAtoms out;
  if (a.size() != b.size()) return {false, 1.0};
  std::vector<bool> used(b.size(), false);
  for (const auto& x : a) {
    int best = -1;
    double bd = 1e300;
    for (std::size_t i = 0; i < b.size(); ++i) {
      if (used[i] || b[i].mass != x.mass) continue;
      const double dist = chordal_distance(x.location, b[i].location);
      if (dist < bd) bd = dist, best = static_cast<int>(i);
    }
    if (best < 0) return {false, 1.0};
    used[static_cast<std::size_t>(best)] = true;
    out.worst = std::max(out.worst, bd);
  }
  out.ok = out.worst <= tol;
  return out;
}

BigInt ipow(int d, int n) {
  BigInt r = 1;
  for (int i = 0; i < n; ++i) r *= d;
  return r;
}

int needed_depth(double M, double H, int d) {
  if (!(H > 0.0) || H >= M) return 0;
  return static_cast<int>(std::ceil(std::log(M / H) / std::log(static_cast<double>(d)) - 1e-9)) + 1;
}

}  // namespace

PointedTree pointed_member_tree(const Polynomial& f, int depth, const ResolutionSpec& res) {
  const EscapeEvaluator ev(f);
  const CircleMax cm = circle_max(ev);
  const double M = max_escape_rate(f);
  BuildOptions opts;
  opts.depth = depth;
  opts.resolution = res;
  opts.focus_depth = std::min(std::max(depth, needed_depth(M, cm.value, f.degree())), 12);
  opts.focus_points = {cm.argmax};
  auto [tree, measure] = build_tree(f, opts);
  return basepoint(f, tree);
}

TreePoint snap_to_vertex(const Tree& tree, const TreePoint& p, double rel) {
  if (p.kind != TreePoint::Kind::Edge) return p;
  const auto& e = tree.edge(p.id);
  if (e.bottom >= 0 && std::abs(p.height - e.bottom_height) <= rel * e.bottom_height)
    return TreePoint::at_vertex(tree, e.bottom);
  if (e.top >= 0 && std::abs(p.height - e.top_height) <= rel * e.top_height)
    return TreePoint::at_vertex(tree, e.top);
  return p;
}

std::vector<Atom> components_at(const Tree& tree, const TreeMeasure& measure, const TreePoint& p) {
  std::vector<Atom> out;
  if (p.kind == TreePoint::Kind::Vertex) {
    const auto& v = tree.vertex(p.id);
    if (!v.expanded) throw TruncationExceeded("vertex " + std::to_string(p.id) + " is not expanded");
    Rational below = 0;
    for (int c : v.child_edges) {
      out.push_back({SpherePoint::at(seed_centroid(tree, c)), measure[c]});
      below += measure[c];
    }
    out.push_back({SpherePoint::inf(), Rational(1) - below});
  } else if (p.kind == TreePoint::Kind::Edge) {
    out.push_back({SpherePoint::at(seed_centroid(tree, p.id)), measure[p.id]});
    out.push_back({SpherePoint::inf(), Rational(1) - measure[p.id]});
  } else {
    throw TruncationExceeded("the point lies below the built tree");
  }
  return out;
}

std::vector<Atom> cluster_atoms(std::vector<Atom> atoms, double merge, double snap_infinity) {
  std::vector<Atom> live;
  for (auto& a : atoms) {
    if (a.mass == 0) continue;
    if (!a.location.infinite && chordal_distance(a.location, SpherePoint::inf()) < snap_infinity)
      a.location = SpherePoint::inf();
    live.push_back(a);
  }
  const std::size_t n = live.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (chordal_distance(live[i].location, live[j].location) < merge) parent[find(i)] = find(j);

  std::vector<Atom> out;
  for (std::size_t r = 0; r < n; ++r) {
    if (find(r) != r) continue;
    Rational mass = 0;
    Complex weighted{};
    bool infinite = false;
    for (std::size_t i = 0; i < n; ++i) {
      if (find(i) != r) continue;
      mass += live[i].mass;
      if (live[i].location.infinite) infinite = true;
      else weighted += live[i].location.value * live[i].mass.convert_to<double>();
    }
    Atom a{SpherePoint::inf(), mass};
    if (!infinite) {
      double finite_mass = mass.convert_to<double>();
      a.location = SpherePoint::at(weighted / finite_mass);
    }
    out.push_back(a);
  }
  std::sort(out.begin(), out.end(), [](const Atom& a, const Atom& b) {
    if (a.location.infinite != b.location.infinite) return !a.location.infinite;
    if (a.location.value.real() != b.location.value.real()) return a.location.value.real() < b.location.value.real();
    return a.location.value.imag() < b.location.value.imag();
  });
  return out;
}

LimitMeasure limit_measure(const FamilySpec& spec, const LimitOptions& opts) {
  return limit_measure(sample_members(spec), opts);
}

LimitMeasure limit_measure(const std::vector<FamilyMember>& members, const LimitOptions& opts) {
  const auto& last = last_member(members);
  LimitMeasure out;
  out.d = last.f.degree();
  out.regime = classify_regime(members);

  if (out.regime.regime == Regime::JuliaBasepoint) {
    out.atoms = {{SpherePoint::inf(), Rational(1)}};
    return out;
  }
  if (out.regime.regime == Regime::EscapingBasepoint) {
    const SeedSet seeds = build_seeds(last.f, 6);
    std::vector<std::uint32_t> all(seeds.points.size());
    std::iota(all.begin(), all.end(), 0u);
    out.atoms = cluster_atoms({{SpherePoint::at(seeds.centroid(all)), Rational(1)}}, opts.merge, opts.snap_infinity);
    return out;
  }

  // Interior basepoint: read the weights around p off the last two members.
  const auto& prev = members[members.size() - 2];
  PointedTree a = pointed_member_tree(prev.f, opts.depth, opts.resolution);
  PointedTree b = pointed_member_tree(last.f, opts.depth, opts.resolution);
  TreePoint pa = snap_to_vertex(a.tree, a.point, opts.snap);
  TreePoint pb = snap_to_vertex(b.tree, b.point, opts.snap);
  if (!truncation_isomorphic(a.tree, pa, b.tree, pb, opts.depth))
    throw NonStabilizedTree("pointed truncations of the last two members differ at depth " +
                            std::to_string(opts.depth));
  if (pb.kind == TreePoint::Kind::Vertex) expand_vertex(b.tree, pb.id);
  if (pa.kind == TreePoint::Kind::Vertex) expand_vertex(a.tree, pa.id);
  const TreeMeasure ma = measure_of(a.tree), mb = measure_of(b.tree);
  const auto atoms_a = cluster_atoms(components_at(a.tree, ma, pa), opts.merge, opts.snap_infinity);
  out.atoms = cluster_atoms(components_at(b.tree, mb, pb), opts.merge, opts.snap_infinity);
  // Atoms must have settled as well: same masses, locations within twice the merge radius.
  const MatchedAtoms cmp = compare_atoms(atoms_a, out.atoms, 2.0 * opts.merge);
  if (!cmp.ok)
    throw NonStabilizedTree("atoms of the last two members differ (chordal " + std::to_string(cmp.worst) + ")");
  out.generation = generation(b.tree, pb).value_or(0);
  return out;
}

ZeroCount count_zeros_in_component(const Polynomial& f, int n, const Tree& tree, const TreeMeasure& measure, int e) {
  if (n < 1) throw InvalidArgument("degeneration", "iterate order must be at least 1");
  ZeroCount out;
  // A trunk edge stands for the unbounded side, which carries no mass and
  // no zeros.
  if (tree.edge(e).trunk) return out;
  out.expected = measure[e] * ipow(tree.d, n);
  const IterateRoots roots = roots_of_iterate(f, n);
  const FillResult fill = edge_fill(tree, e);
  for (const auto& z : roots.roots) {
    if (fill.contains(z, false)) ++out.count;
    if (fill.near_boundary(z)) out.ambiguous = true;
  }
  return out;
}

RegionSummary component_region(const Tree& tree, int e) {
  RegionSummary out;
  const auto& edge = tree.edge(e);
  if (edge.trunk) {
    out.contains_infinity = true;
    out.chordal_diameter = 2.0;
    return out;
  }
  const FillResult fill = edge_fill(tree, e);
  const Window& w = fill.window;
  const double h = 0.5 * w.cell_size();
  out.cell_size = w.cell_size();
  const Complex lo = w.cell_center(fill.min_x, fill.min_y) - Complex(h, h);
  const Complex hi = w.cell_center(fill.max_x, fill.max_y) + Complex(h, h);
  out.bbox_lo = lo;
  out.bbox_hi = hi;
  const std::vector<Complex> corners{lo, hi, {lo.real(), hi.imag()}, {hi.real(), lo.imag()}};
  for (std::size_t i = 0; i < corners.size(); ++i)
    for (std::size_t j = i + 1; j < corners.size(); ++j)
      out.chordal_diameter = std::max(out.chordal_diameter, chordal_distance(corners[i], corners[j]));
  const auto& seeds = tree_seeds(tree);
  const std::size_t stride = std::max<std::size_t>(1, edge.seeds.size() / 16);
  for (std::size_t i = 0; i < edge.seeds.size(); i += stride) out.samples.push_back(seeds.points[edge.seeds[i]]);
  return out;
}

std::vector<Complex> extrapolate_iterates(const std::vector<Polynomial>& members, int m) {
  if (members.size() < 3) throw InvalidArgument("degeneration", "extrapolation needs three members");
  std::vector<std::vector<Complex>> v;
  for (std::size_t i = members.size() - 3; i < members.size(); ++i) v.push_back(iterate_coefficients(members[i], m));
  const auto& ref = v.back();
  const std::size_t pivot = static_cast<std::size_t>(
      std::max_element(ref.begin(), ref.end(), [](Complex x, Complex y) { return std::abs(x) < std::abs(y); }) -
      ref.begin());
  for (auto& x : v) {
    if (std::abs(x[pivot]) == 0.0) throw ExtrapolationMismatch("pivot coefficient vanishes along the schedule", 1.0);
    const Complex s = x[pivot];
    for (auto& c : x) c /= s;
  }
  std::vector<Complex> out(ref.size());
  for (std::size_t i = 0; i < ref.size(); ++i) {
    const Complex x0 = v[0][i], x1 = v[1][i], x2 = v[2][i];
    const Complex d1 = x1 - x0, d2 = x2 - x1;
    const Complex denom = d2 - d1;
    const double scale = std::max({std::abs(x0), std::abs(x1), std::abs(x2), 1e-300});
    if (std::abs(denom) <= 1e-14 * scale || std::abs(d2) <= 1e-15 * scale) {
      out[i] = x2;
    } else {
      const Complex acc = x2 - d2 * d2 / denom;
      // Oscillating or non-geometric tails make Aitken unreliable; keep the last value then.
      out[i] = std::abs(acc - x2) <= 2.0 * std::abs(d2) + 1e-15 * scale ? acc : x2;
    }
  }
  projective_normalize(out);
  return out;
}

BoundaryPoint product_form(const LimitMeasure& lm, int m) {
  const BigInt Dm = ipow(lm.d, m);
  BoundaryPoint bp;
  bp.D = static_cast<int>(Dm);
  bp.b = Complex{};
  bp.k = 0;
  Coeffs p{Complex(1.0, 0.0)};
  for (const auto& a : lm.atoms) {
    const Rational e = a.mass * Dm;
    if (boost::multiprecision::denominator(e) != 1)
      throw InvalidArgument("degeneration",
                            "atom mass times d^m is not an integer; m must be at least N(p)");
    const int n = static_cast<int>(boost::multiprecision::numerator(e));
    if (a.location.infinite) {
      bp.k += n;
      continue;
    }
    for (int i = 0; i < n; ++i) p = multiply(p, Coeffs{-a.location.value, Complex(1.0, 0.0)});
  }
  // Products of float atoms leave round-off where exact zeros belong.
  double top = 0.0;
  for (const auto& c : p) top = std::max(top, std::abs(c));
  for (auto& c : p) {
    if (std::abs(c.real()) < 1e-12 * top) c.real(0.0);
    if (std::abs(c.imag()) < 1e-12 * top) c.imag(0.0);
  }
  bp.p = p;
  return bp;
}

LimitIterate limit_iterate(const FamilySpec& spec, int m, const LimitOptions& opts) {
  return limit_iterate(sample_members(spec), m, opts);
}

LimitIterate limit_iterate(const std::vector<FamilyMember>& members, int m, const LimitOptions& opts) {
  if (m < 1) throw InvalidArgument("degeneration", "iterate order must be at least 1");
  return limit_iterate(members, limit_measure(members, opts), m);
}

LimitIterate limit_iterate(const std::vector<FamilyMember>& members, const LimitMeasure& lm, int m) {
  if (m < 1) throw InvalidArgument("degeneration", "iterate order must be at least 1");
  std::vector<Polynomial> polys;
  for (const auto& x : members) polys.push_back(x.f);

  LimitIterate out;
  out.extrapolated = extrapolate_iterates(polys, m);
  if (lm.regime.regime == Regime::JuliaBasepoint) {
    out.point = boundary_from_projective(out.extrapolated, 1e-5);
    out.from_product = false;
    return out;
  }
  LimitMeasure single = lm;
  if (lm.regime.regime == Regime::EscapingBasepoint) single.atoms = {{lm.atoms.front().location, Rational(1)}};
  out.point = product_form(single, m);
  out.deviation = projective_distance(projective_coefficients(out.point), out.extrapolated);
  if (out.deviation > 1e-3)
    throw ExtrapolationMismatch("product form and coefficient limit differ by " + std::to_string(out.deviation),
                                out.deviation);
  return out;
}

KBoundReport kbound_check(int k, const Rational& mass, int d, int N) {
  KBoundReport r;
  r.N = N;
  r.k = k;
  r.mass = mass;
  r.bound = mass * ipow(d, N);
  r.pass = Rational(k) >= r.bound;
  r.equality = Rational(k) == r.bound;
  return r;
}

Rational unbounded_mass(Tree& tree, const TreePoint& p, int N) {
  const double target = tree.base_height() / std::pow(static_cast<double>(tree.d), N);
  if (p.kind == TreePoint::Kind::JuliaEnd) throw InvalidArgument("degeneration", "the point has no branch");
  TreePoint q = p;
  if (p.height < target) q = point_above(tree, containing_edge(tree, p), target);
  const int e = containing_edge(tree, q);
  if (e < 0) return Rational(0);  // q sits above the whole tree
  return Rational(1) - measure_of(tree)[e];
}

KBoundReport verify_kbound(const FamilySpec& spec, int N, const LimitOptions& opts) {
  return verify_kbound(sample_members(spec), N, opts);
}

KBoundReport verify_kbound(const std::vector<FamilyMember>& members, int N, const LimitOptions& opts) {
  if (N < 1) throw InvalidArgument("degeneration", "N must be at least 1");
  std::vector<Polynomial> polys;
  for (const auto& x : members) polys.push_back(x.f);
  const std::vector<Complex> limit = extrapolate_iterates(polys, N);
  const BoundaryPoint bp = boundary_from_projective(limit, 1e-4);
  if (bp.degree_p() < 0) throw InvalidArgument("degeneration", "limit of the iterate not resolved");

  const auto& f = last_member(members).f;
  const int d = f.degree();
  const EscapeEvaluator ev(f);
  const CircleMax cm = circle_max(ev);
  BuildOptions bo;
  bo.depth = std::min(opts.depth, N);
  bo.resolution = opts.resolution;
  bo.focus_depth = N + 1;
  bo.focus_points = {cm.argmax};
  auto [tree, measure] = build_tree(f, bo);
  PointedTree pt = basepoint(f, tree);
  TreePoint p = snap_to_vertex(pt.tree, pt.point, opts.snap);
  return kbound_check(bp.k, unbounded_mass(pt.tree, p, N), d, N);
}

}  // namespace polytree
