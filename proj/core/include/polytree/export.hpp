#pragma once

#include <string>
#include <utility>
#include <vector>

#include "polytree/degeneration.hpp"
#include "polytree/finite_determination.hpp"
#include "polytree/stability.hpp"
#include "polytree/tree.hpp"

namespace polytree {

/// "num/denom", always with a denominator.
std::string format_rational(const Rational& r);
Rational parse_rational(const std::string& text);

/// Tree JSON: vertices and edges with heights written to 17 significant
/// digits and masses as exact fractions. Output is deterministic.
std::string tree_to_json(const Tree& tree, const TreeMeasure& measure);
/// Rebuilds the combinatorial tree and measure (no build context: it
/// cannot be expanded further).
std::pair<Tree, TreeMeasure> tree_from_json(const std::string& text);

/// Graphviz text: vertices labelled by height, edges by `deg / mass`.
std::string tree_to_dot(const Tree& tree, const TreeMeasure& measure);

/// Atoms file: case tag, N(p), d and atoms [{re, im, mass}] with
/// {"location": "inf", mass} for the point at infinity.
std::string measure_to_json(const LimitMeasure& lm);

std::string kbound_to_json(const KBoundReport& r);
std::string stability_to_json(const StabilityVerdict& v);
std::string report_to_json(const TheoremTwoReport& r);

struct SweepRow {
  std::string param;
  double M = 0.0;
  double basepoint_height = 0.0;
  std::string regime;
  int n_atoms = 0;
};

/// CSV with header `param,M,basepoint_height,regime,n_atoms`.
std::string sweep_to_csv(const std::vector<SweepRow>& rows);

}  // namespace polytree
