#pragma once
// Evaluation harness for the conjugated backward-parabolic inequality. For a
// test function v supported in [0, T/2] and a gamma sweep it computes
//   lhs(gamma)  = int ||dt v + sum_jk dj(a_jk dk v) + Phi'(gamma(T-t)) v||_{H^-s}^2 dt
//   rhs terms   = int ||grad v||_{H^-s_Omega}^2 dt  and  int ||v||_{L2}^2 dt
// plus per-block diagnostics mirroring the high/low frequency energy split,
// and reports the empirical (gamma_0, C) of
//   lhs >= C gamma^{1/4} (rhs_grad + gamma^{3/4} rhs_l2).

#include <functional>
#include <memory>
#include <optional>

#include "paley/holder.hpp"
#include "paley/paraproduct.hpp"
#include "paley/synth.hpp"
#include "paley/verifiers.hpp"
#include "paley/weight.hpp"

namespace paley {

// ---------------------------------------------------------------------------
// Coefficient fields.
// ---------------------------------------------------------------------------

class CoefficientField {
 public:
  /// entries is row-major dim x dim; must be symmetric, real, elliptic.
  static CoefficientField build(int dim, std::vector<TimeGridFunction> entries, const Modulus& mu,
                                const Modulus& omega, int norm_time_stride = 4) {
    if (dim != 1 && dim != 2) throw std::invalid_argument("CoefficientField: dim 1 or 2");
    if (entries.size() != static_cast<std::size_t>(dim * dim)) {
      throw std::invalid_argument("CoefficientField: need dim^2 entries");
    }
    CoefficientField f;
    f.dim_ = dim;
    f.entries_ = std::move(entries);
    const auto& g = f.entries_.front().grid();
    const int m = f.entries_.front().time_samples();
    for (const auto& e : f.entries_) {
      if (!(e.grid() == g) || e.time_samples() != m) {
        throw std::invalid_argument("CoefficientField: inconsistent entry shapes");
      }
    }
    // Realness and symmetry.
    for (int j = 0; j < dim; ++j) {
      for (int k = 0; k < dim; ++k) {
        const auto& a = f.a(j, k);
        for (int i = 0; i < m; i += norm_time_stride) {
          if (a.slice(i).max_imag() > 1e-12 * std::max(1.0, a.slice(i).linf())) {
            throw std::invalid_argument("CoefficientField: entries must be real");
          }
        }
        if (k < j) {
          for (int i = 0; i < m; i += norm_time_stride) {
            if (l2_distance(f.a(j, k).slice(i), f.a(k, j).slice(i)) >
                1e-12 * std::max(1.0, f.a(j, k).slice(i).l2())) {
              throw std::invalid_argument("CoefficientField: matrix must be symmetric");
            }
          }
        }
      }
    }
    f.a0_ = f.min_eigenvalue();
    if (!(f.a0_ > 0.0)) throw std::invalid_argument("CoefficientField: ellipticity violated");
    double sm = 0.0, sn = 0.0;
    for (const auto& e : f.entries_) {
      sm = std::max(sm, time_modulus_seminorm(e, mu, norm_time_stride));
      sn = std::max(sn, space_holder_norm(e, omega, std::max(1, m / 16)));
    }
    f.mu_time_seminorm_ = sm;
    f.omega_space_norm_ = sn;
    return f;
  }

  int dim() const { return dim_; }
  const TimeGridFunction& a(int j, int k) const {
    return entries_[static_cast<std::size_t>(j * dim_ + k)];
  }
  const Grid& grid() const { return entries_.front().grid(); }
  const TimeAxis& axis() const { return entries_.front().axis(); }
  double a0() const { return a0_; }
  double mu_time_seminorm() const { return mu_time_seminorm_; }
  double omega_space_norm() const { return omega_space_norm_; }

  const std::optional<TimeGridFunction>& zero_order() const { return zero_order_; }
  void attach_zero_order(TimeGridFunction c) { zero_order_ = std::move(c); }

 private:
  double min_eigenvalue() const {
    double worst = std::numeric_limits<double>::infinity();
    const int m = entries_.front().time_samples();
    for (int i = 0; i < m; ++i) {
      if (dim_ == 1) {
        for (const auto& v : a(0, 0).slice(i).samples()) worst = std::min(worst, v.real());
      } else {
        const auto p = a(0, 0).slice(i).samples();
        const auto q = a(0, 1).slice(i).samples();
        const auto r = a(1, 1).slice(i).samples();
        for (std::size_t l = 0; l < p.size(); ++l) {
          const double tr = 0.5 * (p[l].real() + r[l].real());
          const double dd = 0.5 * (p[l].real() - r[l].real());
          worst = std::min(worst, tr - std::sqrt(dd * dd + sq(q[l].real())));
        }
      }
    }
    return worst;
  }

  int dim_ = 1;
  std::vector<TimeGridFunction> entries_;
  std::optional<TimeGridFunction> zero_order_;
  double a0_ = 0.0;
  double mu_time_seminorm_ = 0.0;
  double omega_space_norm_ = 0.0;
};

/// Identity matrix coefficients.
inline CoefficientField identity_coefficients(const Grid& g, const TimeAxis& axis,
                                              const Modulus& mu, const Modulus& omega) {
  auto one = [&] {
    std::vector<GridFunction> s(static_cast<std::size_t>(axis.samples),
                                GridFunction::from_samples(g, std::vector<cplx>(g.size(), cplx{1.0, 0.0}), true));
    return TimeGridFunction(axis, std::move(s));
  };
  auto zero = [&] {
    std::vector<GridFunction> s(static_cast<std::size_t>(axis.samples), GridFunction::zero(g));
    return TimeGridFunction(axis, std::move(s));
  };
  std::vector<TimeGridFunction> e;
  if (g.dim == 1) {
    e.push_back(one());
  } else {
    e.push_back(one());
    e.push_back(zero());
    e.push_back(zero());
    e.push_back(one());
  }
  return CoefficientField::build(g.dim, std::move(e), mu, omega);
}

/// a_11(t,x) = 1 + amp sin(mode 2 pi x / L) w(t), other entries identity.
inline CoefficientField sinusoidal_coefficients(const Grid& g, const TimeAxis& axis, double amp,
                                                int mode, const std::vector<double>& w,
                                                const Modulus& mu, const Modulus& omega) {
  if (w.size() != static_cast<std::size_t>(axis.samples)) {
    throw std::invalid_argument("sinusoidal_coefficients: w must have one value per time node");
  }
  if (!(std::abs(amp) < 1.0)) throw std::invalid_argument("sinusoidal_coefficients: |amp| < 1");
  std::vector<GridFunction> a11;
  for (int i = 0; i < axis.samples; ++i) {
    std::vector<cplx> s(g.size());
    for (std::size_t l = 0; l < s.size(); ++l) {
      const int jx = g.dim == 1 ? static_cast<int>(l) : static_cast<int>(l) % g.n;
      const double x = g.period * jx / g.n;
      s[l] = 1.0 + amp * std::sin(mode * kTwoPi * x / g.period) * w[static_cast<std::size_t>(i)];
    }
    a11.push_back(GridFunction::from_samples(g, std::move(s), true));
  }
  std::vector<TimeGridFunction> e;
  e.push_back(TimeGridFunction(axis, std::move(a11)));
  if (g.dim == 2) {
    auto one = [&] {
      std::vector<GridFunction> s(static_cast<std::size_t>(axis.samples),
                                  GridFunction::from_samples(g, std::vector<cplx>(g.size(), cplx{1.0, 0.0}), true));
      return TimeGridFunction(axis, std::move(s));
    };
    auto zero = [&] {
      std::vector<GridFunction> s(static_cast<std::size_t>(axis.samples), GridFunction::zero(g));
      return TimeGridFunction(axis, std::move(s));
    };
    e.push_back(zero());
    e.push_back(zero());
    e.push_back(one());
  }
  return CoefficientField::build(g.dim, std::move(e), mu, omega);
}

/// v(t, x) = g(t) e^{i k.x} with g the bump on (0, T/2).
inline TimeGridFunction bump_mode_field(const Grid& g, const TimeAxis& axis, int kx, int ky = 0,
                                        double amplitude = 1.0) {
  const auto mode = fourier_mode(g, kx, ky);
  std::vector<GridFunction> slices;
  for (int i = 0; i < axis.samples; ++i) {
    const double gt = amplitude * bump_value(axis.t(i), 0.0, 0.5 * axis.T);
    slices.push_back(scaled(mode, gt));
  }
  return TimeGridFunction(axis, std::move(slices));
}

// ---------------------------------------------------------------------------
// The conjugated operator.
// ---------------------------------------------------------------------------

/// sum_jk dj(a_jk(t_i) dk v(t_i)) with alias-free products.
inline GridFunction divergence_form_term(const CoefficientField& coeffs, const TimeGridFunction& v,
                                         int i, const CutoffPair& cut = standard_cutoffs()) {
  (void)cut;
  const Grid& g = v.grid();
  auto acc = GridFunction::zero(g);
  for (int j = 0; j < coeffs.dim(); ++j) {
    for (int k = 0; k < coeffs.dim(); ++k) {
      const auto flux = dealiased_product(coeffs.a(j, k).slice(i), gradient_component(v.slice(i), k));
      acc = axpy(1.0, acc, 1.0, gradient_component(flux, j));
    }
  }
  return acc;
}

/// dt v + sum dj(a_jk dk v) + Phi'(gamma(T-t)) v at time node i.
inline GridFunction apply_conjugated_operator(const CoefficientField& coeffs, const WeightTable& wt,
                                              const TimeGridFunction& v, double gamma, int i,
                                              bool include_zero_order = false,
                                              const CutoffPair& cut = standard_cutoffs()) {
  const double t = v.axis().t(i);
  const double lambda = wt.Phi_prime(gamma * (v.axis().T - t));
  auto out = axpy(1.0, time_derivative4(v, i), 1.0, divergence_form_term(coeffs, v, i, cut));
  out = axpy(1.0, out, lambda, v.slice(i));
  if (include_zero_order && coeffs.zero_order()) {
    out = axpy(1.0, out, 1.0, dealiased_product(coeffs.zero_order()->slice(i), v.slice(i)));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Sweep evaluation.
// ---------------------------------------------------------------------------

struct CarlemanConfig {
  double s = 0.5;
  Modulus mu = Modulus::power(1.0);
  std::shared_ptr<const WeightTable> weight;
  std::vector<double> gammas;
  TimeGridFunction v;
  double ratio_floor = 1e-3;
  bool include_zero_order = false;

  Modulus omega() const { return mu.derived_omega(); }

  void validate() const {
    if (!(s > 0.0 && s < 1.0)) throw std::invalid_argument("CarlemanConfig: s in (0,1)");
    if (!weight) throw std::invalid_argument("CarlemanConfig: missing weight table");
    if (gammas.empty()) throw std::invalid_argument("CarlemanConfig: empty gamma sweep");
    const int m = v.time_samples();
    if ((m - 1) % 4 != 0) {
      throw std::invalid_argument("CarlemanConfig: time samples must be 4k+1 for the half-range rule");
    }
    // Support condition: v = 0 beyond T/2, checked on the grid.
    const double peak = v.linf();
    for (int i = (m - 1) / 2 + 1; i < m; ++i) {
      if (v.slice(i).linf() > 1e-12 * peak) {
        throw std::invalid_argument("CarlemanConfig: v must vanish for t > T/2 (violated at node " +
                                    std::to_string(i) + ")");
      }
    }
    for (double g : gammas) {
      if (!(g >= 1.0)) throw std::invalid_argument("CarlemanConfig: gamma >= 1");
    }
  }
};

struct GammaRecord {
  double gamma = 0.0;
  double lhs = 0.0;
  double rhs_grad = 0.0;
  double rhs_l2 = 0.0;
  double ratio = 0.0;  // lhs / (gamma^{1/4} (rhs_grad + gamma^{3/4} rhs_l2))
};

struct BlockDiagnostic {
  int q = 0;
  bool degenerate = false;        // block carries no energy of v
  double elliptic_weight_term = 0.0;  // int || E_q + Phi' v_q ||^2
  double curvature_term = 0.0;        // gamma int Phi'' ||v_q||^2
  double penalty_term = 0.0;          // seminorm-scaled 2 * 2^{4q} mu(2^{-2q}) int ||v_q||^2
  double kappa = 0.0;                 // measured elliptic block constant
  int high_regime_samples = 0;        // Phi' <= kappa 2^{2q} / 2
  int low_regime_samples = 0;
  double lower_bound_ratio = 0.0;     // lhs_q / ((gamma/2 + gamma^{1/4} Omega^2 2^{2q}) int ||v_q||^2)
};

struct AltExponentProbe {
  double p1 = 0.0, p2 = 0.0;
  double min_ratio = 0.0;
  bool holds = false;
};

struct CarlemanReport {
  std::vector<GammaRecord> sweep;
  bool degenerate = false;
  bool gamma0_found = false;
  double gamma0 = 0.0;
  double constant = 0.0;  // min ratio over gamma >= gamma0
  std::vector<std::pair<double, std::vector<BlockDiagnostic>>> diagnostics;  // per gamma
  std::vector<AltExponentProbe> alt_exponents;
  double coeff_a0 = 0.0;
  double coeff_mu_seminorm = 0.0;
  double coeff_omega_norm = 0.0;
};

namespace detail {

struct SweepCache {
  // Per time node i in [0, i_half]: quadratic form of the lhs integrand in
  // lambda = Phi'(gamma(T-t_i)), and the gamma-independent rhs integrands.
  std::vector<double> a, b, c;  // ||D||_{-s}^2, Re<D, v>_{-s}, ||v||_{-s}^2
  std::vector<double> grad, l2;
  std::vector<double> simpson;
  std::vector<double> t;
};

// Per-q caches for the block diagnostics.
struct BlockCache {
  // scalars per (q, i): P = ||dtv_q + E_q||^2, Q = Re<dtv_q + E_q, v_q>,
  // R = ||v_q||^2, S = ||E_q||^2, U = Re<E_q, v_q>.
  std::vector<std::vector<double>> P, Q, R, S, U;
  std::vector<double> simpson;
  std::vector<double> t;
  int q_lo = -1;
};

inline std::vector<double> simpson_weights(int nodes, double h) {
  if (nodes < 3 || nodes % 2 == 0) throw std::invalid_argument("simpson: need odd node count");
  std::vector<double> w(static_cast<std::size_t>(nodes), 0.0);
  for (int i = 0; i < nodes; ++i) {
    double c = (i == 0 || i == nodes - 1) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
    w[static_cast<std::size_t>(i)] = c * h / 3.0;
  }
  return w;
}

// Weighted spectral sums at s-exponent: returns sum_q 2^{2sq} w_q^2 ||Delta_q .||^2
// pieces for the pair (D, v) in one pass over the spectrum.
struct DyadicQuadratic {
  double dd = 0.0, dv = 0.0, vv = 0.0;
};

inline DyadicQuadratic dyadic_quadratic(const GridFunction& D, const GridFunction& v, double s,
                                        const CutoffPair& cut) {
  DyadicQuadratic out;
  const Grid& g = D.grid();
  const int qc = q_complete(g);
  for (std::size_t l = 0; l < D.spectrum().size(); ++l) {
    const double r = xi_abs(g, l);
    double wsum = 0.0;
    for (int q = -1; q <= qc; ++q) {
      const double m = (q == -1) ? cut.chi(r) : cut.phi_cut(std::exp2(-q) * r);
      if (m != 0.0) wsum += std::exp2(2.0 * s * q) * m * m;
    }
    if (wsum == 0.0) continue;
    const cplx dc = D.spectrum()[l];
    const cplx vc = v.spectrum()[l];
    out.dd += wsum * std::norm(dc);
    out.dv += wsum * (dc * std::conj(vc)).real();
    out.vv += wsum * std::norm(vc);
  }
  const double meas = D.measure();
  out.dd *= meas;
  out.dv *= meas;
  out.vv *= meas;
  return out;
}

inline SweepCache build_sweep_cache(const CarlemanConfig& config, const CoefficientField& coeffs,
                                    const CutoffPair& cut) {
  const auto& v = config.v;
  const int i_half = (v.time_samples() - 1) / 2;
  SweepCache cache;
  cache.simpson = simpson_weights(i_half + 1, v.axis().dt());
  const auto omega = config.omega();
  for (int i = 0; i <= i_half; ++i) {
    cache.t.push_back(v.axis().t(i));
    auto D = axpy(1.0, time_derivative4(v, i), 1.0, divergence_form_term(coeffs, v, i, cut));
    if (config.include_zero_order && coeffs.zero_order()) {
      D = axpy(1.0, D, 1.0, dealiased_product(coeffs.zero_order()->slice(i), v.slice(i)));
    }
    const auto quad = dyadic_quadratic(D, v.slice(i), -config.s, cut);
    cache.a.push_back(quad.dd);
    cache.b.push_back(quad.dv);
    cache.c.push_back(quad.vv);
    double gr = 0.0;
    for (int axis = 0; axis < v.grid().dim; ++axis) {
      gr += sq(dyadic_sobolev_norm(gradient_component(v.slice(i), axis), {-config.s, omega}, cut));
    }
    cache.grad.push_back(gr);
    cache.l2.push_back(sq(v.slice(i).l2()));
  }
  return cache;
}

inline BlockCache build_block_cache(const CarlemanConfig& config, const CoefficientField& coeffs,
                                    const CutoffPair& cut) {
  const auto& v = config.v;
  const Grid& g = v.grid();
  const int i_half = (v.time_samples() - 1) / 2;
  const int qc = q_certified(g);
  BlockCache cache;
  cache.simpson = simpson_weights(i_half + 1, v.axis().dt());
  const std::size_t nq = static_cast<std::size_t>(qc + 2);
  cache.P.assign(nq, {});
  cache.Q.assign(nq, {});
  cache.R.assign(nq, {});
  cache.S.assign(nq, {});
  cache.U.assign(nq, {});
  for (int i = 0; i <= i_half; ++i) {
    cache.t.push_back(v.axis().t(i));
    const auto dtv = time_derivative4(v, i);
    for (int q = -1; q <= qc; ++q) {
      const auto vq = delta_q(v.slice(i), q, cut);
      const auto dtvq = delta_q(dtv, q, cut);
      auto Eq = GridFunction::zero(g);
      for (int j = 0; j < coeffs.dim(); ++j) {
        for (int k = 0; k < coeffs.dim(); ++k) {
          const auto Sa = s_q(coeffs.a(j, k).slice(i), q - 1, cut);
          const auto flux = dealiased_product(Sa, gradient_component(vq, k));
          Eq = axpy(1.0, Eq, 1.0, gradient_component(flux, j));
        }
      }
      const auto DE = axpy(1.0, dtvq, 1.0, Eq);
      const std::size_t qi = static_cast<std::size_t>(q + 1);
      cache.P[qi].push_back(sq(DE.l2()));
      cache.Q[qi].push_back(inner(DE, vq).real());
      cache.R[qi].push_back(sq(vq.l2()));
      cache.S[qi].push_back(sq(Eq.l2()));
      cache.U[qi].push_back(inner(Eq, vq).real());
    }
  }
  return cache;
}

inline std::vector<BlockDiagnostic> assemble_diagnostics(const CarlemanConfig& config,
                                                         const CoefficientField& coeffs,
                                                         const BlockCache& cache, double gamma) {
  const auto& wt = *config.weight;
  const auto omega = config.omega();
  const double T = config.v.axis().T;
  const int qc = static_cast<int>(cache.P.size()) - 2;
  std::vector<BlockDiagnostic> out;
  for (int q = -1; q <= qc; ++q) {
    const std::size_t qi = static_cast<std::size_t>(q + 1);
    BlockDiagnostic d;
    d.q = q;
    double vq_int = 0.0, lhs_q = 0.0, ew = 0.0, curv = 0.0;
    double kappa = std::numeric_limits<double>::infinity();
    double vq_peak = 0.0;
    for (std::size_t i = 0; i < cache.t.size(); ++i) vq_peak = std::max(vq_peak, cache.R[qi][i]);
    for (std::size_t i = 0; i < cache.t.size(); ++i) {
      const double w = cache.simpson[i];
      const double lambda = wt.Phi_prime(gamma * (T - cache.t[i]));
      const double R = cache.R[qi][i];
      vq_int += w * R;
      lhs_q += w * (cache.P[qi][i] + 2.0 * lambda * cache.Q[qi][i] + lambda * lambda * R);
      ew += w * (cache.S[qi][i] + 2.0 * lambda * cache.U[qi][i] + lambda * lambda * R);
      curv += w * wt.Phi_double_prime(gamma * (T - cache.t[i])) * R;
      if (R > 1e-12 * vq_peak && R > 0.0) {
        kappa = std::min(kappa, std::abs(cache.U[qi][i]) / (std::exp2(2.0 * q) * R));
        if (lambda <= 0.5 * kappa * std::exp2(2.0 * q)) {
          ++d.high_regime_samples;
        } else {
          ++d.low_regime_samples;
        }
      }
    }
    d.elliptic_weight_term = ew;
    d.curvature_term = gamma * curv;
    if (vq_int <= 0.0 || vq_peak <= 0.0) {
      d.degenerate = true;
      out.push_back(d);
      continue;
    }
    d.kappa = kappa;
    const double eps = std::exp2(-2.0 * q);
    const double mu_eps = config.mu.extended(eps);
    d.penalty_term = coeffs.mu_time_seminorm() *
                     (mu_eps / eps * std::exp2(2.0 * q) + std::exp2(4.0 * q) * mu_eps) * vq_int;
    const double Om = std::exp2(q) * omega.extended(std::exp2(-q));
    d.lower_bound_ratio =
        lhs_q / ((0.5 * gamma + std::pow(gamma, 0.25) * Om * Om * std::exp2(2.0 * q)) * vq_int);
    out.push_back(d);
  }
  return out;
}

}  // namespace detail

inline CarlemanReport evaluate_carleman(const CarlemanConfig& config, const CoefficientField& coeffs,
                                        bool with_diagnostics = true,
                                        const CutoffPair& cut = standard_cutoffs()) {
  config.validate();
  if (!(coeffs.grid() == config.v.grid())) {
    throw std::invalid_argument("evaluate_carleman: coefficient grid mismatch");
  }
  if (coeffs.axis().samples != config.v.time_samples()) {
    throw std::invalid_argument("evaluate_carleman: coefficient time axis mismatch");
  }
  CarlemanReport rep;
  rep.coeff_a0 = coeffs.a0();
  rep.coeff_mu_seminorm = coeffs.mu_time_seminorm();
  rep.coeff_omega_norm = coeffs.omega_space_norm();
  if (config.v.linf() == 0.0) {
    rep.degenerate = true;
    return rep;
  }

  const auto cache = detail::build_sweep_cache(config, coeffs, cut);
  double rhs_grad = 0.0, rhs_l2 = 0.0;
  for (std::size_t i = 0; i < cache.t.size(); ++i) {
    rhs_grad += cache.simpson[i] * cache.grad[i];
    rhs_l2 += cache.simpson[i] * cache.l2[i];
  }
  const auto& wt = *config.weight;
  const double T = config.v.axis().T;
  for (double gamma : config.gammas) {
    GammaRecord r;
    r.gamma = gamma;
    double lhs = 0.0;
    for (std::size_t i = 0; i < cache.t.size(); ++i) {
      const double lambda = wt.Phi_prime(gamma * (T - cache.t[i]));
      lhs += cache.simpson[i] * (cache.a[i] + 2.0 * lambda * cache.b[i] + lambda * lambda * cache.c[i]);
    }
    r.lhs = lhs;
    r.rhs_grad = rhs_grad;
    r.rhs_l2 = rhs_l2;
    r.ratio = lhs / (std::pow(gamma, 0.25) * (rhs_grad + std::pow(gamma, 0.75) * rhs_l2));
    rep.sweep.push_back(r);
  }

  // Empirical gamma_0: earliest sweep point from which the ratio stays above
  // the floor and never decreases.
  const auto& sw = rep.sweep;
  for (std::size_t j = 0; j < sw.size(); ++j) {
    bool ok = true;
    for (std::size_t l = j; l < sw.size(); ++l) {
      if (sw[l].ratio < config.ratio_floor) ok = false;
      if (l + 1 < sw.size() && sw[l + 1].ratio < sw[l].ratio * (1.0 - 1e-9)) ok = false;
    }
    if (ok) {
      rep.gamma0_found = true;
      rep.gamma0 = sw[j].gamma;
      rep.constant = sw[j].ratio;
      for (std::size_t l = j; l < sw.size(); ++l) rep.constant = std::min(rep.constant, sw[l].ratio);
      break;
    }
  }

  // Does the inequality also hold with stronger gamma exponents on this data?
  if (rep.gamma0_found) {
    for (const auto& [p1, p2] : {std::pair{0.25, 0.75}, std::pair{0.5, 0.75}, std::pair{0.25, 1.0},
                                 std::pair{0.5, 1.0}}) {
      AltExponentProbe probe;
      probe.p1 = p1;
      probe.p2 = p2;
      probe.min_ratio = std::numeric_limits<double>::infinity();
      for (const auto& r : sw) {
        if (r.gamma < rep.gamma0) continue;
        const double ratio = r.lhs / (std::pow(r.gamma, p1) * (rhs_grad + std::pow(r.gamma, p2) * rhs_l2));
        probe.min_ratio = std::min(probe.min_ratio, ratio);
      }
      probe.holds = probe.min_ratio >= config.ratio_floor;
      rep.alt_exponents.push_back(probe);
    }
  }

  if (with_diagnostics) {
    const auto bcache = detail::build_block_cache(config, coeffs, cut);
    for (double gamma : config.gammas) {
      rep.diagnostics.push_back({gamma, detail::assemble_diagnostics(config, coeffs, bcache, gamma)});
    }
  }
  return rep;
}

/// Per-(q, t) diagnostics at a single gamma.
inline std::vector<BlockDiagnostic> block_diagnostics(const CarlemanConfig& config,
                                                      const CoefficientField& coeffs, double gamma,
                                                      const CutoffPair& cut = standard_cutoffs()) {
  config.validate();
  const auto bcache = detail::build_block_cache(config, coeffs, cut);
  return detail::assemble_diagnostics(config, coeffs, bcache, gamma);
}

// ---------------------------------------------------------------------------
// The conjugation identity: with u = e^{-Phi(gamma(T-t))/gamma} v,
//   dt u + sum dj(a_jk dk u)  =  e^{-Phi/gamma} (dt v + sum dj(a_jk dk v) + Phi' v).
// Discretely both sides use the same 4th-order time stencil; the residual is
// the relative L2 gap maximized over interior time nodes.
// ---------------------------------------------------------------------------

inline double conjugation_residual(const CoefficientField& coeffs, const TimeGridFunction& v,
                                   double gamma, const std::function<double(double)>& Phi,
                                   const std::function<double(double)>& Phi_prime,
                                   const CutoffPair& cut = standard_cutoffs()) {
  const double T = v.axis().T;
  const int m = v.time_samples();
  std::vector<GridFunction> u_slices;
  u_slices.reserve(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    const double w = std::exp(-Phi(gamma * (T - v.axis().t(i))) / gamma);
    u_slices.push_back(scaled(v.slice(i), w));
  }
  const TimeGridFunction u(v.axis(), std::move(u_slices));

  // Relative gap in L2 of space-time over [0, T/2].
  const int i_half = (m - 1) / 2;
  const auto w_simpson = detail::simpson_weights(i_half + 1, v.axis().dt());
  double gap2 = 0.0, scale2 = 0.0;
  for (int i = 0; i <= i_half; ++i) {
    const double w = std::exp(-Phi(gamma * (T - v.axis().t(i))) / gamma);
    const auto lhs = axpy(1.0, time_derivative4(u, i), 1.0, divergence_form_term(coeffs, u, i, cut));
    auto Lv = axpy(1.0, time_derivative4(v, i), 1.0, divergence_form_term(coeffs, v, i, cut));
    Lv = axpy(1.0, Lv, Phi_prime(gamma * (T - v.axis().t(i))), v.slice(i));
    const auto rhs = scaled(Lv, w);
    gap2 += w_simpson[static_cast<std::size_t>(i)] * sq(l2_distance(lhs, rhs));
    scale2 += w_simpson[static_cast<std::size_t>(i)] * sq(rhs.l2());
  }
  return std::sqrt(gap2 / scale2);
}

}  // namespace paley
