#include "polytree/pointed.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "polytree/errors.hpp"

namespace polytree {

CircleMax circle_max(const EscapeEvaluator& ev, int samples) {
  const double step = 2.0 * std::numbers::pi / samples;
  auto g = [&](double theta) { return ev.rate(std::polar(1.0, theta), 1e-13); };
  std::vector<double> values(static_cast<std::size_t>(samples));
  for (int k = 0; k < samples; ++k) values[static_cast<std::size_t>(k)] = g(k * step);

  std::vector<int> order(static_cast<std::size_t>(samples));
  for (int k = 0; k < samples; ++k) order[static_cast<std::size_t>(k)] = k;
  const int keep = std::min(samples, 4);
  std::partial_sort(order.begin(), order.begin() + keep, order.end(),
                    [&](int a, int b) { return values[static_cast<std::size_t>(a)] > values[static_cast<std::size_t>(b)]; });

  CircleMax best{values[static_cast<std::size_t>(order[0])], std::polar(1.0, order[0] * step)};
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  for (int r = 0; r < keep; ++r) {
    double a = (order[static_cast<std::size_t>(r)] - 1) * step, b = (order[static_cast<std::size_t>(r)] + 1) * step;
    double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
    double g1 = g(x1), g2 = g(x2);
    for (int it = 0; it < 60; ++it) {
      if (g1 > g2) {
        b = x2;
        x2 = x1;
        g2 = g1;
        x1 = b - phi * (b - a);
        g1 = g(x1);
      } else {
        a = x1;
        x1 = x2;
        g1 = g2;
        x2 = a + phi * (b - a);
        g2 = g(x2);
      }
    }
    const double theta = 0.5 * (a + b);
    const double v = g(theta);
    if (v > best.value) best = {v, std::polar(1.0, theta)};
  }
  return best;
}

namespace {

int seed_in_fill(const SeedSet& seeds, const FillResult& fill) {
  for (std::size_t i = 0; i < seeds.points.size(); ++i)
    if (fill.contains(seeds.points[i])) return static_cast<int>(i);
  return -1;
}

int edge_containing(Tree& tree, Complex z, int level, double fill_level) {
  const auto& seeds = tree_seeds(tree);
  std::vector<std::uint32_t> all(seeds.points.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<std::uint32_t>(i);
  Window w = enclosing_window(seeds, all, 256);
  w.center = z;
  const FillResult fill = adaptive_fill(tree_evaluator(tree), fill_level, w, z);
  const int seed = fill.found ? seed_in_fill(seeds, fill) : -1;
  if (seed < 0) throw ResolutionExhausted("no seed found in the component of " + format_complex(z));
  return component_of_seed(tree, level, static_cast<std::uint32_t>(seed));
}

}  // namespace

TreePoint locate(Tree& tree, Complex z, double raw) {
  const double M = tree.M;
  const double rel = 1e-7;
  if (raw <= 0.0) return {TreePoint::Kind::JuliaEnd, -1, 0.0};
  if (std::abs(raw - M) <= rel * M) return TreePoint::at_vertex(tree, tree.base);
  if (raw > M) return point_above(tree, 0, raw * tree.scale);

  const int L = level_count(tree);
  for (int i = 0; i < L; ++i) {
    const double hi = vertex_height_raw(tree, i), lo = vertex_height_raw(tree, i + 1);
    if (std::abs(raw - lo) <= rel * lo) {
      const int e = edge_containing(tree, z, i, level_value(tree, i));
      if (tree.edge(e).bottom < 0) return {TreePoint::Kind::Truncated, e, raw * tree.scale};
      return TreePoint::at_vertex(tree, tree.edge(e).bottom);
    }
    if (raw > lo) {
      const int e = edge_containing(tree, z, i, 0.5 * (raw + hi));
      return TreePoint::on_edge(e, raw * tree.scale);
    }
  }
  if (L == 0) return {TreePoint::Kind::Truncated, 0, raw * tree.scale};
  const int e = edge_containing(tree, z, L - 1, level_value(tree, L - 1));
  return {TreePoint::Kind::Truncated, e, raw * tree.scale};
}

PointedTree basepoint(const Polynomial& f, const Tree& tree, int samples) {
  if (!(tree_polynomial(tree) == f)) throw InvalidArgument("treebuild", "tree was built for a different polynomial");
  PointedTree out{tree, {}, {}, {}, 0.0, std::nullopt};
  const CircleMax cm = circle_max(tree_evaluator(tree), samples);
  out.argmax = cm.argmax;
  out.raw_height = cm.value;
  out.point = locate(out.tree, cm.argmax, cm.value);
  out.measure = measure_of(out.tree);
  out.generation = generation(out.tree, out.point);
  return out;
}

}  // namespace polytree
