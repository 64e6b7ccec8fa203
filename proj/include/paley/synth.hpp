#pragma once
// Deterministic synthetic data: seeded band-limited random fields whose
// spectra depend only on the seed and the band (so the same function can be
// sampled at several resolutions), lacunary time series with a prescribed
// modulus of continuity, and the compactly supported time bump.

#include <cstdint>
#include <random>

#include "paley/grid.hpp"
#include "paley/lp.hpp"
#include "paley/modulus.hpp"

namespace paley {

struct FieldSpec {
  std::uint64_t seed = 1;
  double xi_cut = 0.0;        // band limit; 0 means (3/4) 2^{q_complete - 1}
  double decay = 1.5;         // |c_m| ~ (1 + |m|)^{-decay}
  bool declared_real = true;
  const Modulus* omega_profile = nullptr;  // optional C^omega-matched amplitude
};

/// Random band-limited field. Modes are visited in a canonical order that does
/// not depend on the grid size, so two grids with the same spec carry the same
/// function as long as both resolve the band.
inline GridFunction random_band_limited(const Grid& g, const FieldSpec& spec) {
  g.validate();
  std::mt19937_64 eng(spec.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const double base = kTwoPi / g.period;
  double xi_cut = spec.xi_cut;
  if (xi_cut <= 0.0) xi_cut = 0.75 * std::exp2(std::max(0, q_complete(g) - 1));
  const int m_cut = static_cast<int>(std::floor(xi_cut / base));
  if (m_cut >= g.n / 2) throw std::invalid_argument("random_band_limited: band beyond Nyquist");

  std::vector<cplx> c(g.size(), cplx{0.0, 0.0});
  auto amplitude = [&](double mabs) {
    if (spec.omega_profile) {
      const double s = 1.0 / std::max(1.0, mabs);
      const double dimfac = g.dim == 1 ? std::max(1.0, mabs) : sq(std::max(1.0, mabs));
      return spec.omega_profile->extended(s) / dimfac;
    }
    return std::pow(1.0 + mabs, -spec.decay);
  };
  auto bin = [&](int mx, int my) -> std::size_t {
    const int kx = mx >= 0 ? mx : mx + g.n;
    if (g.dim == 1) return static_cast<std::size_t>(kx);
    const int ky = my >= 0 ? my : my + g.n;
    return std::size_t(ky) * g.n + kx;
  };

  if (g.dim == 1) {
    c[0] = cplx{gauss(eng), 0.0} * 0.25;
    for (int m = 1; m <= m_cut; ++m) {
      const cplx z{gauss(eng), gauss(eng)};
      const cplx v = z * amplitude(m);
      c[bin(m, 0)] = v;
      c[bin(-m, 0)] = spec.declared_real ? std::conj(v) : cplx{gauss(eng), gauss(eng)} * amplitude(m);
    }
  } else {
    c[0] = cplx{gauss(eng), 0.0} * 0.25;
    // Canonical half-plane: my > 0, or (my == 0 and mx > 0).
    for (int my = 0; my <= m_cut; ++my) {
      for (int mx = (my == 0 ? 1 : -m_cut); mx <= m_cut; ++mx) {
        const double mabs = std::hypot(double(mx), double(my));
        if (mabs > m_cut) continue;
        const cplx z{gauss(eng), gauss(eng)};
        const cplx v = z * amplitude(mabs);
        c[bin(mx, my)] = v;
        c[bin(-mx, -my)] =
            spec.declared_real ? std::conj(v) : cplx{gauss(eng), gauss(eng)} * amplitude(mabs);
      }
    }
  }
  // Unit coefficient energy.
  double e = 0.0;
  for (const auto& v : c) e += std::norm(v);
  if (e > 0.0) {
    const double inv = 1.0 / std::sqrt(e);
    for (auto& v : c) v *= inv;
  }
  return GridFunction::from_spectrum(g, std::move(c), spec.declared_real);
}

/// A single Fourier mode e^{i m . x}.
inline GridFunction fourier_mode(const Grid& g, int mx, int my = 0) {
  std::vector<cplx> c(g.size(), cplx{0.0, 0.0});
  const int kx = mx >= 0 ? mx : mx + g.n;
  std::size_t idx = static_cast<std::size_t>(kx);
  if (g.dim == 2) {
    const int ky = my >= 0 ? my : my + g.n;
    idx = std::size_t(ky) * g.n + kx;
  }
  c[idx] = cplx{1.0, 0.0};
  return GridFunction::from_spectrum(g, std::move(c), false);
}

// ---------------------------------------------------------------------------
// Time-direction synthetics.
// ---------------------------------------------------------------------------

/// Samples of a lacunary cosine series on the unit interval whose modulus of
/// continuity matches mu: w(z) = sum_j a_j cos(2 pi 2^j z + th_j) with 2^j a_j
/// following the increments of 2^j mu(2^-j). Normalized to sup |w| = 1.
inline std::vector<double> lacunary_series(const Modulus& mu, int levels, int samples,
                                           std::uint64_t seed) {
  std::mt19937_64 eng(seed);
  std::uniform_real_distribution<double> phase(0.0, kTwoPi);
  std::vector<double> amp(static_cast<std::size_t>(levels) + 1);
  std::vector<double> th(amp.size());
  double lambda_prev = 0.0;
  for (int j = 0; j <= levels; ++j) {
    const double lambda = std::exp2(j) * mu(std::exp2(-j));
    amp[j] = std::exp2(-j) * (lambda - lambda_prev);
    lambda_prev = lambda;
    th[j] = phase(eng);
  }
  std::vector<double> w(static_cast<std::size_t>(samples), 0.0);
  double peak = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double t = static_cast<double>(i) / (samples - 1);
    double v = 0.0;
    for (int j = 0; j <= levels; ++j) v += amp[j] * std::cos(kTwoPi * std::exp2(j) * t + th[j]);
    w[i] = v;
    peak = std::max(peak, std::abs(v));
  }
  if (peak > 0.0) {
    for (auto& v : w) v /= peak;
  }
  return w;
}

/// Smooth bump supported on (t_lo, t_hi), peak value 1 at the midpoint:
/// exp(4 - 1/(z(1-z))) with z the normalized position. Vanishes to all orders
/// at both ends.
inline double bump_value(double t, double t_lo, double t_hi) {
  const double z = (t - t_lo) / (t_hi - t_lo);
  if (z <= 0.0 || z >= 1.0) return 0.0;
  return std::exp(4.0 - 1.0 / (z * (1.0 - z)));
}

/// d/dt of bump_value.
inline double bump_derivative(double t, double t_lo, double t_hi) {
  const double z = (t - t_lo) / (t_hi - t_lo);
  if (z <= 0.0 || z >= 1.0) return 0.0;
  const double u = z * (1.0 - z);
  return bump_value(t, t_lo, t_hi) * ((1.0 - 2.0 * z) / (u * u)) / (t_hi - t_lo);
}

}  // namespace paley
