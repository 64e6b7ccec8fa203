#pragma once
// Numerical verifiers for the auxiliary inequalities: Bernstein block bounds,
// the low-frequency commutator estimate, and the time mollifier with its
// approximation bounds.

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "paley/lp.hpp"
#include "paley/paraproduct.hpp"

namespace paley {

struct EstimateSample {
  std::map<std::string, double> values;
  double ratio = 0.0;
  bool skipped = false;
  std::string descriptor;
};

struct EstimateReport {
  std::string estimate;
  std::vector<EstimateSample> samples;
  double max_ratio = 0.0;
  bool pass = false;
  double ceiling = 0.0;

  void finish(double ceiling_in) {
    ceiling = ceiling_in;
    max_ratio = 0.0;
    for (const auto& s : samples) {
      if (!s.skipped) max_ratio = std::max(max_ratio, s.ratio);
    }
    pass = max_ratio <= ceiling;
  }
};

// ---------------------------------------------------------------------------
// Bernstein inequalities. On the L2 side the block ratios are pinned to the
// annulus [3/4, 8/3] exactly (Parseval); the L-infinity ratios are recorded
// as measured values.
// ---------------------------------------------------------------------------

struct BernsteinSample {
  int q = -1;
  bool skipped = false;
  double block_ratio_l2 = 0.0;    // 2^-q ||grad Dq u||_2 / ||Dq u||_2
  double block_ratio_linf = 0.0;  // same with sup norms
  double lowpass_ratio_l2 = 0.0;  // ||grad Sq u||_2 / (2^q ||u||_2), q >= 0
  double lowpass_ratio_linf = 0.0;
};

inline BernsteinSample verify_bernstein(const GridFunction& u, int q,
                                        const CutoffPair& cut = standard_cutoffs()) {
  if (q < -1) throw std::invalid_argument("verify_bernstein: q >= -1");
  assert_resolved(u, "verify_bernstein");
  BernsteinSample s;
  s.q = q;
  const auto block = delta_q(u, q, cut);
  const double bl2 = block.l2();
  if (bl2 == 0.0) {
    s.skipped = true;
    return s;
  }
  const double scale = std::exp2(-q);
  s.block_ratio_l2 = scale * gradient_l2(block) / bl2;
  s.block_ratio_linf = scale * gradient_linf(block) / block.linf();
  if (q >= 0) {
    const auto low = s_q(u, q, cut);
    s.lowpass_ratio_l2 = scale * gradient_l2(low) / u.l2();
    s.lowpass_ratio_linf = scale * gradient_linf(low) / u.linf();
  }
  return s;
}

inline EstimateReport bernstein_report(const GridFunction& u,
                                       const CutoffPair& cut = standard_cutoffs()) {
  EstimateReport rep;
  rep.estimate = "bernstein";
  for (int q = -1; q <= q_certified(u.grid()); ++q) {
    const auto s = verify_bernstein(u, q, cut);
    EstimateSample e;
    e.skipped = s.skipped;
    e.descriptor = "q=" + std::to_string(q);
    if (!s.skipped) {
      e.values["block_l2"] = s.block_ratio_l2;
      e.values["block_linf"] = s.block_ratio_linf;
      if (q >= 0) {
        e.values["lowpass_l2"] = s.lowpass_ratio_l2;
        e.values["lowpass_linf"] = s.lowpass_ratio_linf;
      }
      e.ratio = s.block_ratio_l2;
    }
    rep.samples.push_back(std::move(e));
  }
  rep.finish(8.0 / 3.0 + 1e-6);
  return rep;
}

// ---------------------------------------------------------------------------
// Commutator estimate ||[S_{q'}a, Delta_q] Delta_p u|| <= C 2^-p ||grad S_{q'}a|| ||Delta_p u||.
// ---------------------------------------------------------------------------

struct CommutatorSample {
  int q = 0, q_prime = 0, p = 0;
  double numerator = 0.0;
  double denominator = 0.0;
  double ratio = 0.0;
  bool degenerate = false;  // constant a: ratio defined as 0
};

inline CommutatorSample verify_commutator(const GridFunction& a, const GridFunction& u, int q,
                                          int q_prime, int p,
                                          const CutoffPair& cut = standard_cutoffs()) {
  if (q_prime < 0 || p < -1 || q < -1) {
    throw std::invalid_argument("verify_commutator: need q' >= 0 and p, q >= -1");
  }
  if (a.max_imag() > 1e-12 * std::max(1.0, a.linf())) {
    throw std::invalid_argument("verify_commutator: a must be real");
  }
  CommutatorSample s;
  s.q = q;
  s.q_prime = q_prime;
  s.p = p;
  const auto Sa = s_q(a, q_prime, cut);
  const auto Du = delta_q(u, p, cut);
  const auto comm = axpy(1.0, delta_q(dealiased_product(Sa, Du), q, cut), -1.0,
                         dealiased_product(Sa, delta_q(Du, q, cut)));
  s.numerator = comm.l2();
  const double grad = gradient_linf(Sa);
  const double un = Du.l2();
  s.denominator = std::exp2(-p) * grad * un;
  if (s.denominator <= 1e-14 * un) {
    s.degenerate = true;
    s.ratio = 0.0;
  } else {
    s.ratio = s.numerator / s.denominator;
  }
  return s;
}

/// Max commutator ratio over a (q, q', p) lattice for one (a, u) pair.
inline EstimateReport commutator_report(const GridFunction& a, const GridFunction& u, int q_lo,
                                        int q_hi, const CutoffPair& cut = standard_cutoffs()) {
  EstimateReport rep;
  rep.estimate = "commutator";
  for (int qp = 0; qp <= q_hi; ++qp) {
    for (int q = q_lo; q <= q_hi; ++q) {
      for (int p = q_lo; p <= q_hi; ++p) {
        const auto s = verify_commutator(a, u, q, qp, p, cut);
        EstimateSample e;
        e.descriptor = "q=" + std::to_string(q) + ",q'=" + std::to_string(qp) +
                       ",p=" + std::to_string(p);
        e.ratio = s.ratio;
        e.skipped = s.degenerate || s.numerator == 0.0;
        e.values["numerator"] = s.numerator;
        e.values["denominator"] = s.denominator;
        rep.samples.push_back(std::move(e));
      }
    }
  }
  rep.finish(1e6);
  return rep;
}

// ---------------------------------------------------------------------------
// Friedrichs mollification in time. Kernel rho(z) = c exp(-1/(1-4z^2)) on
// |z| < 1/2: compactly supported, even, unit mass.
// ---------------------------------------------------------------------------

namespace detail {

inline double mollifier_kernel_raw(double z) {
  const double w = 1.0 - 4.0 * z * z;
  if (w <= 0.0) return 0.0;
  return std::exp(-1.0 / w);
}

inline double mollifier_norm() {
  static const double c = integrate([](double z) { return mollifier_kernel_raw(z); }, -0.5, 0.5, 1e-13);
  return c;
}

}  // namespace detail

inline double mollifier_kernel(double z) {
  return detail::mollifier_kernel_raw(z) / detail::mollifier_norm();
}

inline double mollifier_kernel_derivative(double z) {
  const double w = 1.0 - 4.0 * z * z;
  if (w <= 0.0) return 0.0;
  return mollifier_kernel(z) * (-8.0 * z) / (w * w);
}

namespace detail {

// Discrete kernel weights on the time grid; renormalized so constants are
// reproduced exactly. The off-grid extension is by constant continuation.
inline std::vector<double> mollifier_weights(double eps, double dt, int& half_width) {
  half_width = static_cast<int>(std::floor(0.5 * eps / dt));
  std::vector<double> w(static_cast<std::size_t>(2 * half_width) + 1);
  double sum = 0.0;
  for (int j = -half_width; j <= half_width; ++j) {
    const double v = mollifier_kernel(j * dt / eps);
    w[static_cast<std::size_t>(j + half_width)] = v;
    sum += v;
  }
  for (auto& v : w) v /= sum;
  return w;
}

}  // namespace detail

inline TimeGridFunction mollify_time(const TimeGridFunction& a, double eps) {
  const double dt = a.axis().dt();
  if (!(eps > 0.0 && eps < 0.5 * a.axis().T)) {
    throw std::invalid_argument("mollify_time: eps in (0, T/2)");
  }
  if (dt > eps / 8.0) {
    throw std::invalid_argument("mollify_time: time grid too coarse (need dt <= eps/8)");
  }
  int hw = 0;
  const auto w = detail::mollifier_weights(eps, dt, hw);
  const int m = a.time_samples();
  std::vector<GridFunction> out;
  out.reserve(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    std::vector<cplx> c(a.grid().size(), cplx{0.0, 0.0});
    for (int j = -hw; j <= hw; ++j) {
      const int k = std::clamp(i + j, 0, m - 1);  // constant extension
      const double wj = w[static_cast<std::size_t>(j + hw)];
      const auto spec = a.slice(k).spectrum();
      for (std::size_t l = 0; l < c.size(); ++l) c[l] += wj * spec[l];
    }
    out.push_back(GridFunction::from_spectrum(a.grid(), std::move(c), a.slice(i).declared_real()));
  }
  return TimeGridFunction(a.axis(), std::move(out));
}

/// d/dt of the mollified field, computed with the analytic kernel derivative
/// (not by differencing the mollified samples).
inline TimeGridFunction mollified_time_derivative(const TimeGridFunction& a, double eps) {
  const double dt = a.axis().dt();
  if (!(eps > 0.0 && eps < 0.5 * a.axis().T)) {
    throw std::invalid_argument("mollified_time_derivative: eps in (0, T/2)");
  }
  if (dt > eps / 8.0) {
    throw std::invalid_argument("mollified_time_derivative: time grid too coarse");
  }
  const int hw = static_cast<int>(std::floor(0.5 * eps / dt));
  std::vector<double> w(static_cast<std::size_t>(2 * hw) + 1);
  for (int j = -hw; j <= hw; ++j) {
    // (1/eps^2) rho'((t-s)/eps) ds -> weights rho'(-j dt/eps) dt / eps^2.
    w[static_cast<std::size_t>(j + hw)] = mollifier_kernel_derivative(-j * dt / eps) * dt / (eps * eps);
  }
  const int m = a.time_samples();
  std::vector<GridFunction> out;
  out.reserve(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    std::vector<cplx> c(a.grid().size(), cplx{0.0, 0.0});
    for (int j = -hw; j <= hw; ++j) {
      const int k = std::clamp(i + j, 0, m - 1);
      const double wj = w[static_cast<std::size_t>(j + hw)];
      const auto spec = a.slice(k).spectrum();
      for (std::size_t l = 0; l < c.size(); ++l) c[l] += wj * spec[l];
    }
    out.push_back(GridFunction::from_spectrum(a.grid(), std::move(c), a.slice(i).declared_real()));
  }
  return TimeGridFunction(a.axis(), std::move(out));
}

/// Sup over interior (t, x) of |a^eps - a| and eps |d/dt a^eps|, as multiples
/// of mu(eps). "Interior" keeps a half-window away from both ends, where the
/// constant extension would bias the constants.
struct MollifierRatios {
  double eps = 0.0;
  double diff_over_mu = 0.0;        // sup |a^eps - a| / mu(eps)
  double deriv_over_mu_eps = 0.0;   // sup |dt a^eps| * eps / mu(eps)
};

inline MollifierRatios mollifier_ratios(const TimeGridFunction& a, const Modulus& mu, double eps) {
  const auto sm = mollify_time(a, eps);
  const auto dv = mollified_time_derivative(a, eps);
  const double dt = a.axis().dt();
  const int skip = static_cast<int>(std::ceil(0.5 * eps / dt)) + 1;
  double dmax = 0.0, vmax = 0.0;
  for (int i = skip; i < a.time_samples() - skip; ++i) {
    const auto s0 = a.slice(i).samples();
    const auto s1 = sm.slice(i).samples();
    const auto s2 = dv.slice(i).samples();
    for (std::size_t l = 0; l < s0.size(); ++l) {
      dmax = std::max(dmax, std::abs(s1[l] - s0[l]));
      vmax = std::max(vmax, std::abs(s2[l]));
    }
  }
  MollifierRatios r;
  r.eps = eps;
  r.diff_over_mu = dmax / mu(eps);
  r.deriv_over_mu_eps = vmax * eps / mu(eps);
  return r;
}

}  // namespace paley
