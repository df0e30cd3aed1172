#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "polytree/escape.hpp"

namespace polytree {

/// Square grid of `cells` x `cells` cells covering
/// [center - half, center + half] in both coordinates.
struct Window {
  Complex center;
  double half = 1.0;
  int cells = 256;

  double cell_size() const noexcept { return 2.0 * half / cells; }
  Complex cell_center(int ix, int iy) const noexcept;
  /// Cell containing z; false when z lies outside the window.
  bool locate(Complex z, int& ix, int& iy) const noexcept;
};

/// One connected component of {G < level} on a window, 4-connected.
struct FillResult {
  Window window;
  double level = 0.0;
  std::vector<std::uint8_t> mask;  // cells*cells, row-major by iy
  int count = 0;
  int min_x = 0, max_x = -1, min_y = 0, max_y = -1;
  bool touches_border = false;
  bool found = false;  // false when no cell near the start point is below level

  bool cell(int ix, int iy) const noexcept;
  /// z lies in a mask cell or (with `slack`) one of its 8 neighbours.
  bool contains(Complex z, bool slack = true) const noexcept;
  /// True when the 3x3 block around z mixes mask and non-mask cells.
  bool near_boundary(Complex z) const noexcept;
  Complex bbox_center() const noexcept;
  /// Half the larger side of the bounding box, in plane units.
  double bbox_radius() const noexcept;
};

/// Flood fill from the cell containing `start` (or a below-level cell in
/// its 3x3 neighbourhood). Cells are evaluated lazily.
FillResult flood_fill(const EscapeEvaluator& ev, double level, const Window& w, Complex start);

/// Repeats flood_fill while moving and resizing the window (same cell
/// count) until the component fits comfortably and does not touch the
/// border.
FillResult adaptive_fill(const EscapeEvaluator& ev, double level, Window w, Complex start);

/// Backward orbit of a repelling fixed point w: all d^depth solutions of
/// f^depth(z) = w, indexed so that f(points[i]) = points[i / d]. Because
/// f(w) = w the shallower preimage sets are the leading index ranges.
struct SeedSet {
  int d = 2;
  int depth = 0;
  Complex fixed_point;
  std::vector<Complex> points;

  std::size_t image(std::size_t i) const noexcept { return i / static_cast<std::size_t>(d); }
  Complex centroid(const std::vector<std::uint32_t>& idx) const;
};

inline constexpr std::size_t kMaxSeeds = 1u << 18;

SeedSet build_seeds(const Polynomial& f, int depth);

struct SublevelComponent {
  double level = 0.0;
  std::vector<CriticalPoint> critical;    // critical points inside
  std::vector<std::uint32_t> seeds;       // sorted seed indices inside
  std::vector<int> markers;               // indices of caller markers inside
  Complex sample;                         // fill start point
  Window window;                          // grid used for the final fill
  Complex bbox_lo, bbox_hi;
};

struct ResolutionSpec {
  int cells = 256;
  int max_cells = 2048;
};

/// Splits `seeds` (all inside one component of {G < a} for some a > level)
/// into the components of {G < level}. `accept` may reject a candidate;
/// rejected candidates are refilled with twice the cells, and
/// ResolutionExhausted is thrown past `res.max_cells`.
std::vector<SublevelComponent> partition_seeds(
    const EscapeEvaluator& ev, const SeedSet& seeds, const std::vector<std::uint32_t>& indices,
    const std::vector<CriticalPoint>& critical, double level, const Window& start_window,
    const ResolutionSpec& res, const std::function<bool(const SublevelComponent&)>& accept = {},
    const std::vector<Complex>& markers = {});

/// Window enclosing the given seeds with a margin.
Window enclosing_window(const SeedSet& seeds, const std::vector<std::uint32_t>& indices, int cells);

/// Components of {G_f < t}.
std::vector<SublevelComponent> sublevel_components(const Polynomial& f, double t, const ResolutionSpec& res = {});

}  // namespace polytree
