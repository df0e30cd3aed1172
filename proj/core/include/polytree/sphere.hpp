#pragma once

#include <string>

#include "polytree/polynomial.hpp"

namespace polytree {

/// A point of the Riemann sphere: a complex number or infinity.
struct SpherePoint {
  bool infinite = false;
  Complex value{};

  static SpherePoint inf() { return {true, {}}; }
  static SpherePoint at(Complex z) { return {false, z}; }

  friend bool operator==(const SpherePoint&, const SpherePoint&) = default;
};

/// 2|z - w| / sqrt((1 + |z|^2)(1 + |w|^2)), with 2 / sqrt(1 + |z|^2) against infinity.
double chordal_distance(const SpherePoint& p, const SpherePoint& q);
inline double chordal_distance(Complex z, Complex w) {
  return chordal_distance(SpherePoint::at(z), SpherePoint::at(w));
}

std::string to_string(const SpherePoint& p);

}  // namespace polytree
