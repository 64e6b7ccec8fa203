#pragma once
// Direct modulus-of-continuity seminorms on periodic grids:
//   sup_{0 < |x-y| < 1} |u(x)-u(y)| / omega(|x-y|)         (space)
//   sup_{0 < |t-s| < 1} sup_x |u(t,x)-u(s,x)| / mu(|t-s|)  (time)
// Distances are periodic in space. The full Holder norm adds the sup norm.

#include <algorithm>
#include <cmath>
#include <random>

#include "paley/grid.hpp"
#include "paley/modulus.hpp"

namespace paley {

namespace detail {

inline double periodic_dist(double d, double period) {
  d = std::abs(d);
  return std::min(d, period - d);
}

}  // namespace detail

/// Space seminorm. In 1D every admissible pair of grid points enters; in 2D
/// the offsets are subsampled deterministically (axes, diagonals, and a seeded
/// batch of random offsets).
inline double modulus_seminorm(const GridFunction& u, const Modulus& omega,
                               std::uint64_t seed = 2024) {
  const Grid& g = u.grid();
  if (g.spacing() >= 1.0) {
    throw std::domain_error("modulus_seminorm: grid spacing must be < 1");
  }
  const auto s = u.samples();
  double worst = 0.0;
  if (g.dim == 1) {
    for (int k = 1; k < g.n; ++k) {
      const double d = detail::periodic_dist(k * g.spacing(), g.period);
      if (!(d > 0.0 && d < 1.0)) continue;
      const double w = omega(d);
      double diff = 0.0;
      for (int i = 0; i < g.n; ++i) {
        diff = std::max(diff, std::abs(s[i] - s[(i + k) % g.n]));
      }
      worst = std::max(worst, diff / w);
    }
    return worst;
  }
  // dim == 2: gather offsets.
  std::vector<std::pair<int, int>> offsets;
  for (int k = 1; k < g.n; ++k) {
    offsets.push_back({k, 0});
    offsets.push_back({0, k});
    offsets.push_back({k, k});
    offsets.push_back({k, g.n - k});
  }
  std::mt19937_64 eng(seed);
  std::uniform_int_distribution<int> pick(0, g.n - 1);
  for (int r = 0; r < 64; ++r) offsets.push_back({pick(eng), pick(eng)});
  for (const auto& [kx, ky] : offsets) {
    const double dx = detail::periodic_dist(kx * g.spacing(), g.period);
    const double dy = detail::periodic_dist(ky * g.spacing(), g.period);
    const double d = std::hypot(dx, dy);
    if (!(d > 0.0 && d < 1.0)) continue;
    const double w = omega(d);
    double diff = 0.0;
    for (int y = 0; y < g.n; ++y) {
      const int y2 = (y + ky) % g.n;
      for (int x = 0; x < g.n; ++x) {
        const int x2 = (x + kx) % g.n;
        diff = std::max(diff, std::abs(s[std::size_t(y) * g.n + x] - s[std::size_t(y2) * g.n + x2]));
      }
    }
    worst = std::max(worst, diff / w);
  }
  return worst;
}

/// Full C^omega norm: sup norm plus seminorm.
inline double holder_norm(const GridFunction& u, const Modulus& omega) {
  return u.linf() + modulus_seminorm(u, omega);
}

/// Time-direction seminorm with the sup over x taken inside.
inline double time_modulus_seminorm(const TimeGridFunction& a, const Modulus& mu,
                                    int stride = 1) {
  const int m = a.time_samples();
  double worst = 0.0;
  for (int i = 0; i < m; i += stride) {
    for (int j = i + 1; j < m; j += stride) {
      const double d = a.axis().t(j) - a.axis().t(i);
      if (!(d > 0.0 && d < 1.0)) continue;
      const auto si = a.slice(i).samples();
      const auto sj = a.slice(j).samples();
      double diff = 0.0;
      for (std::size_t k = 0; k < si.size(); ++k) diff = std::max(diff, std::abs(si[k] - sj[k]));
      worst = std::max(worst, diff / mu(d));
    }
  }
  return worst;
}

inline double time_holder_norm(const TimeGridFunction& a, const Modulus& mu, int stride = 1) {
  return a.linf() + time_modulus_seminorm(a, mu, stride);
}

/// Max over time slices of the space Holder norm (subsampled in t).
inline double space_holder_norm(const TimeGridFunction& a, const Modulus& omega, int stride = 8) {
  double worst = 0.0;
  for (int i = 0; i < a.time_samples(); i += stride) {
    worst = std::max(worst, holder_norm(a.slice(i), omega));
  }
  return worst;
}

}  // namespace paley
