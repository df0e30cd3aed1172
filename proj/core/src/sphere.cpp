#include "polytree/sphere.hpp"

#include <cmath>

namespace polytree {

double chordal_distance(const SpherePoint& p, const SpherePoint& q) {
  if (p.infinite && q.infinite) return 0.0;
  if (p.infinite || q.infinite) {
    const double a = std::abs(p.infinite ? q.value : p.value);
    if (a > 1.0) return 2.0 / (a * std::sqrt(1.0 + 1.0 / (a * a)));
    return 2.0 / std::sqrt(1.0 + a * a);
  }
  // Rewritten with 1/z for large arguments so huge values stay accurate.
  const double az = std::abs(p.value), aw = std::abs(q.value);
  if (az > 1e150 || aw > 1e150) {
    const Complex iz = 1.0 / p.value, iw = 1.0 / q.value;
    return 2.0 * std::abs(iz - iw) / std::sqrt((1.0 + std::norm(iz)) * (1.0 + std::norm(iw)));
  }
  const double dist = 2.0 * std::abs(p.value - q.value) / std::sqrt((1.0 + az * az) * (1.0 + aw * aw));
  return std::min(dist, 2.0);
}

std::string to_string(const SpherePoint& p) { return p.infinite ? "inf" : format_complex(p.value); }

}  // namespace polytree
