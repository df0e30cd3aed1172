#include "polytree/sublevel.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include "polytree/errors.hpp"
#include "polytree/roots.hpp"

namespace polytree {

Complex Window::cell_center(int ix, int iy) const noexcept {
  const double h = cell_size();
  return {center.real() - half + (ix + 0.5) * h, center.imag() - half + (iy + 0.5) * h};
}

bool Window::locate(Complex z, int& ix, int& iy) const noexcept {
  const double h = cell_size();
  const double fx = std::floor((z.real() - (center.real() - half)) / h);
  const double fy = std::floor((z.imag() - (center.imag() - half)) / h);
  if (!(fx >= 0 && fy >= 0 && fx < cells && fy < cells)) return false;
  ix = static_cast<int>(fx);
  iy = static_cast<int>(fy);
  return true;
}

bool FillResult::cell(int ix, int iy) const noexcept {
  const int n = window.cells;
  if (ix < 0 || iy < 0 || ix >= n || iy >= n) return false;
  return mask[static_cast<std::size_t>(iy) * static_cast<std::size_t>(n) + static_cast<std::size_t>(ix)] != 0;
}

bool FillResult::contains(Complex z, bool slack) const noexcept {
  int ix = 0, iy = 0;
  if (!found || !window.locate(z, ix, iy)) return false;
  if (cell(ix, iy)) return true;
  if (!slack) return false;
  for (int dy = -1; dy <= 1; ++dy)
    for (int dx = -1; dx <= 1; ++dx)
      if (cell(ix + dx, iy + dy)) return true;
  return false;
}

bool FillResult::near_boundary(Complex z) const noexcept {
  int ix = 0, iy = 0;
  if (!found || !window.locate(z, ix, iy)) return false;
  const bool mid = cell(ix, iy);
  for (int dy = -1; dy <= 1; ++dy)
    for (int dx = -1; dx <= 1; ++dx)
      if (cell(ix + dx, iy + dy) != mid) return true;
  return false;
}

Complex FillResult::bbox_center() const noexcept {
  const Complex a = window.cell_center(min_x, min_y), b = window.cell_center(max_x, max_y);
  return 0.5 * (a + b);
}

double FillResult::bbox_radius() const noexcept {
  const int extent = std::max(max_x - min_x, max_y - min_y) + 1;
  return 0.5 * extent * window.cell_size();
}

FillResult flood_fill(const EscapeEvaluator& ev, double level, const Window& w, Complex start) {
  FillResult r;
  r.window = w;
  r.level = level;
  const int n = w.cells;
  const auto idx = [n](int x, int y) { return static_cast<std::size_t>(y) * static_cast<std::size_t>(n) + static_cast<std::size_t>(x); };
  // 0 = not evaluated, 1 = below level, 2 = not below.
  std::vector<std::uint8_t> state(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0);
  r.mask.assign(state.size(), 0);
  auto below = [&](int x, int y) {
    auto& s = state[idx(x, y)];
    if (s == 0) s = ev.below(w.cell_center(x, y), level) ? 1 : 2;
    return s == 1;
  };

  int sx = 0, sy = 0;
  if (!w.locate(start, sx, sy)) return r;
  int bx = -1, by = -1;
  double best = 0.0;
  for (int dy = -1; dy <= 1; ++dy)
    for (int dx = -1; dx <= 1; ++dx) {
      const int x = sx + dx, y = sy + dy;
      if (x < 0 || y < 0 || x >= n || y >= n || !below(x, y)) continue;
      const double dist = std::abs(w.cell_center(x, y) - start);
      if (bx < 0 || dist < best) {
        bx = x;
        by = y;
        best = dist;
      }
    }
  if (bx < 0) return r;

  r.found = true;
  r.min_x = r.max_x = bx;
  r.min_y = r.max_y = by;
  std::deque<std::pair<int, int>> queue{{bx, by}};
  r.mask[idx(bx, by)] = 1;
  while (!queue.empty()) {
    const auto [x, y] = queue.front();
    queue.pop_front();
    ++r.count;
    r.min_x = std::min(r.min_x, x);
    r.max_x = std::max(r.max_x, x);
    r.min_y = std::min(r.min_y, y);
    r.max_y = std::max(r.max_y, y);
    if (x == 0 || y == 0 || x == n - 1 || y == n - 1) r.touches_border = true;
    static constexpr int off[4][2] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
    for (const auto& o : off) {
      const int nx = x + o[0], ny = y + o[1];
      if (nx < 0 || ny < 0 || nx >= n || ny >= n) continue;
      if (r.mask[idx(nx, ny)] || !below(nx, ny)) continue;
      r.mask[idx(nx, ny)] = 1;
      queue.emplace_back(nx, ny);
    }
  }
  return r;
}

FillResult adaptive_fill(const EscapeEvaluator& ev, double level, Window w, Complex start) {
  FillResult r;
  // Relative floor: conjugates squeezed near 0 still get resolved.
  const double floor_half = 1e-13 * std::max(std::abs(start), 1e-250);
  for (int attempt = 0; attempt < 80; ++attempt) {
    r = flood_fill(ev, level, w, start);
    if (!r.found) {
      if (w.half < floor_half) return r;
      w.center = start;
      w.half /= 8.0;
      continue;
    }
    if (r.touches_border) {
      w.center = r.bbox_center();
      w.half *= 4.0;
      continue;
    }
    const int extent = std::max(r.max_x - r.min_x, r.max_y - r.min_y) + 1;
    if (4 * extent < w.cells) {
      const double pad = 2.0 * w.cell_size();
      w.center = r.bbox_center();
      w.half = 1.5 * r.bbox_radius() + pad;
      continue;
    }
    return r;
  }
  return r;
}

Complex SeedSet::centroid(const std::vector<std::uint32_t>& idx) const {
  Complex sum{};
  for (auto i : idx) sum += points[i];
  return idx.empty() ? sum : sum / static_cast<double>(idx.size());
}

SeedSet build_seeds(const Polynomial& f, int depth) {
  SeedSet s;
  s.d = f.degree();
  s.depth = depth;
  std::size_t total = 1;
  for (int m = 0; m < depth; ++m) {
    total *= static_cast<std::size_t>(s.d);
    if (total > kMaxSeeds) throw TruncationExceeded("seed set exceeds " + std::to_string(kMaxSeeds) + " points");
  }
  // Most repelling fixed point.
  Coeffs g(f.low().begin(), f.low().end());
  g[1] -= 1.0;
  const auto fixed = solve_roots(g);
  Complex w = fixed.front();
  for (const auto& z : fixed)
    if (std::abs(f.derivative_at(z)) > std::abs(f.derivative_at(w))) w = z;
  s.fixed_point = w;

  const auto d = static_cast<std::size_t>(s.d);
  s.points.assign(1, w);
  std::size_t size = 1;
  for (int m = 1; m <= depth; ++m) {
    std::vector<Complex> next(size * d);
    std::copy(s.points.begin(), s.points.end(), next.begin());
    for (std::size_t i = (m == 1 ? 0 : size / d); i < size; ++i) {
      auto pre = preimages(f, s.points[i]);
      if (i == 0) {
        // Put w itself first so index 0 stays the fixed point.
        auto it = std::min_element(pre.begin(), pre.end(),
                                   [&](Complex a, Complex b) { return std::abs(a - w) < std::abs(b - w); });
        std::iter_swap(pre.begin(), it);
        pre[0] = w;
      }
      for (std::size_t b = 0; b < d; ++b) next[i * d + b] = pre[b];
    }
    s.points = std::move(next);
    size *= d;
  }
  return s;
}

Window enclosing_window(const SeedSet& seeds, const std::vector<std::uint32_t>& indices, int cells) {
  const Complex c = seeds.centroid(indices);
  double r = 0.0;
  for (auto i : indices) r = std::max(r, std::abs(seeds.points[i] - c));
  Window w;
  w.center = c;
  w.half = r > 0.0 ? 1.25 * r : 1.0 + std::abs(c);
  w.cells = cells;
  return w;
}

std::vector<SublevelComponent> partition_seeds(
    const EscapeEvaluator& ev, const SeedSet& seeds, const std::vector<std::uint32_t>& indices,
    const std::vector<CriticalPoint>& critical, double level, const Window& start_window,
    const ResolutionSpec& res, const std::function<bool(const SublevelComponent&)>& accept,
    const std::vector<Complex>& markers) {
  std::vector<SublevelComponent> out;
  std::vector<bool> taken(indices.size(), false);
  for (std::size_t k = 0; k < indices.size(); ++k) {
    if (taken[k]) continue;
    const Complex x = seeds.points[indices[k]];
    Window w = start_window;
    w.cells = res.cells;
    for (;;) {
      const FillResult fill = adaptive_fill(ev, level, w, x);
      SublevelComponent comp;
      comp.level = level;
      comp.sample = x;
      comp.window = fill.window;
      bool overlap = false;
      std::vector<std::size_t> mine;
      for (std::size_t j = 0; j < indices.size(); ++j) {
        if (!fill.contains(seeds.points[indices[j]])) continue;
        if (taken[j]) overlap = true;
        else mine.push_back(j);
      }
      const bool has_start = std::find(mine.begin(), mine.end(), k) != mine.end();
      for (auto j : mine) comp.seeds.push_back(indices[j]);
      std::sort(comp.seeds.begin(), comp.seeds.end());
      for (const auto& c : critical)
        if (fill.contains(c.location)) comp.critical.push_back(c);
      for (std::size_t m = 0; m < markers.size(); ++m)
        if (fill.contains(markers[m])) comp.markers.push_back(static_cast<int>(m));
      if (fill.found) {
        comp.bbox_lo = fill.window.cell_center(fill.min_x, fill.min_y);
        comp.bbox_hi = fill.window.cell_center(fill.max_x, fill.max_y);
      }
      if (fill.found && has_start && !overlap && !fill.touches_border && (!accept || accept(comp))) {
        for (auto j : mine) taken[j] = true;
        out.push_back(std::move(comp));
        break;
      }
      w = fill.window;
      w.cells *= 2;
      if (w.cells > res.max_cells)
        throw ResolutionExhausted("cannot separate the components of {G < " + std::to_string(level) +
                                  "} near " + format_complex(x));
    }
  }
  return out;
}

std::vector<SublevelComponent> sublevel_components(const Polynomial& f, double t, const ResolutionSpec& res) {
  if (!(t > 0.0)) throw InvalidArgument("treebuild", "sublevel parameter must be positive");
  const EscapeEvaluator ev(f);
  const auto data = escape_data(f);
  int depth = 1;
  while (data.max_rate > 0.0 && std::pow(f.degree(), depth) * t <= data.max_rate) ++depth;
  const SeedSet seeds = build_seeds(f, depth);
  std::vector<std::uint32_t> all(seeds.points.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<std::uint32_t>(i);
  return partition_seeds(ev, seeds, all, data.critical, t, enclosing_window(seeds, all, res.cells), res);
}

}  // namespace polytree
