#pragma once

// Implementation of correlations::minimize_on_sphere.

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <tuple>
#include <vector>

namespace qdiss::correlations {

namespace detail {

// Canonical (theta in [0, pi], phi in [0, 2 pi)) for an arbitrary angle pair.
inline std::pair<double, double> canonical_angles(double theta, double phi) {
  const double x = std::sin(theta) * std::cos(phi);
  const double y = std::sin(theta) * std::sin(phi);
  const double z = std::cos(theta);
  const double t = std::acos(std::clamp(z, -1.0, 1.0));
  double p = (x == 0.0 && y == 0.0) ? 0.0 : std::atan2(y, x);
  if (p < 0.0) p += 2.0 * std::numbers::pi;
  if (p >= 2.0 * std::numbers::pi) p = 0.0;
  return {t, p};
}

template <typename F>
SphereMinimum nelder_mead(F& f, double theta, double phi, double step_theta, double step_phi,
                          const OptimizerOptions& opts) {
  struct Vertex {
    std::array<double, 2> x;
    double fx;
  };
  auto eval = [&](std::array<double, 2> x) { return Vertex{x, f(x[0], x[1])}; };
  std::array<Vertex, 3> s{eval({theta, phi}), eval({theta + step_theta, phi}), eval({theta, phi + step_phi})};
  auto by_value = [](const Vertex& a, const Vertex& b) {
    return std::tie(a.fx, a.x[0], a.x[1]) < std::tie(b.fx, b.x[0], b.x[1]);
  };
  auto diameter = [&] {
    double d = 0.0;
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t j = i + 1; j < 3; ++j) {
        d = std::max(d, std::hypot(s[i].x[0] - s[j].x[0], s[i].x[1] - s[j].x[1]));
      }
    }
    return d;
  };
  auto along = [](const std::array<double, 2>& c, const std::array<double, 2>& w, double t) {
    return std::array<double, 2>{c[0] + t * (w[0] - c[0]), c[1] + t * (w[1] - c[1])};
  };

  for (std::size_t it = 0; it < opts.max_iterations; ++it) {
    std::sort(s.begin(), s.end(), by_value);
    if (diameter() < opts.angle_tol) break;
    const std::array<double, 2> c{0.5 * (s[0].x[0] + s[1].x[0]), 0.5 * (s[0].x[1] + s[1].x[1])};
    const Vertex r = eval(along(c, s[2].x, -1.0));
    if (r.fx < s[0].fx) {
      const Vertex e = eval(along(c, s[2].x, -2.0));
      s[2] = e.fx < r.fx ? e : r;
    } else if (r.fx < s[1].fx) {
      s[2] = r;
    } else {
      const bool outside = r.fx < s[2].fx;
      const Vertex k = eval(along(c, outside ? r.x : s[2].x, 0.5));
      if (k.fx < (outside ? r.fx : s[2].fx)) {
        s[2] = k;
      } else {
        for (std::size_t i = 1; i < 3; ++i) s[i] = eval(along(s[0].x, s[i].x, 0.5));
      }
    }
  }
  std::sort(s.begin(), s.end(), by_value);
  const auto [t, p] = canonical_angles(s[0].x[0], s[0].x[1]);
  return {s[0].fx, t, p};
}

}  // namespace detail

template <typename F>
SphereMinimum minimize_on_sphere(F&& f, const OptimizerOptions& opts) {
  const std::size_t nt = std::max<std::size_t>(opts.grid_theta, 2);
  const std::size_t np = std::max<std::size_t>(opts.grid_phi, 1);
  const double dt = std::numbers::pi / static_cast<double>(nt - 1);
  const double dp = 2.0 * std::numbers::pi / static_cast<double>(np);

  // Poles appear once; ties resolve by lexicographic angle order.
  std::vector<SphereMinimum> grid;
  grid.reserve(nt * np);
  for (std::size_t i = 0; i < nt; ++i) {
    const double theta = static_cast<double>(i) * dt;
    const bool pole = i == 0 || i == nt - 1;
    for (std::size_t j = 0; j < (pole ? 1 : np); ++j) {
      const double phi = static_cast<double>(j) * dp;
      grid.push_back({f(theta, phi), theta, phi});
    }
  }
  auto order = [](const SphereMinimum& a, const SphereMinimum& b) {
    return std::tie(a.value, a.theta, a.phi) < std::tie(b.value, b.theta, b.phi);
  };
  const std::size_t starts = std::min(opts.refine_starts, grid.size());
  std::partial_sort(grid.begin(), grid.begin() + static_cast<std::ptrdiff_t>(starts), grid.end(), order);

  SphereMinimum best = grid.front();
  for (std::size_t k = 0; k < starts; ++k) {
    const SphereMinimum local = detail::nelder_mead(f, grid[k].theta, grid[k].phi, 0.5 * dt, 0.5 * dp, opts);
    if (order(local, best)) best = local;
  }
  return best;
}

}  // namespace qdiss::correlations
