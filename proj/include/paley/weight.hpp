#pragma once
// The Osgood weight function. From a modulus mu build
//   phi(t)   = int_{1/t}^1 ds / mu(s)          (strictly increasing, phi(1) = 0)
//   Phi(tau) = int_0^tau phi^{-1}(s) ds
// so that Phi'' = (Phi')^2 mu(1/Phi') holds identically. phi is unbounded
// exactly when mu satisfies the Osgood condition; requests beyond sup phi
// surface as OsgoodRangeError.
//
// Internally everything is parametrized by u = log2 t, which keeps t
// representable while Phi' = 2^u grows fast.

#include <cmath>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "paley/modulus.hpp"
#include "paley/numerics.hpp"

namespace paley {

struct OsgoodRangeError : std::runtime_error {
  explicit OsgoodRangeError(const std::string& what) : std::runtime_error(what) {}
};

namespace detail {

// d phi / du = ln2 * 2^-u / mu(2^-u), u = log2 t.
inline double phi_increment(const Modulus& mu, double u0, double u1, double tol = 1e-12) {
  const double ln2 = std::log(2.0);
  return ln2 * integrate([&](double u) {
    const double s = std::exp2(-u);
    return s / mu(s);
  }, u0, u1, tol);
}

// d Phi / du along the curve tau = phi(t): ln2 / mu(2^-u).
inline double big_phi_increment(const Modulus& mu, double u0, double u1, double tol = 1e-12) {
  const double ln2 = std::log(2.0);
  return ln2 * integrate([&](double u) { return 1.0 / mu(std::exp2(-u)); }, u0, u1, tol);
}

}  // namespace detail

/// phi(t) for t = 2^u by direct quadrature (slow path, used as reference).
inline double phi_direct(const Modulus& mu, double log2_t, double tol = 1e-12) {
  if (log2_t < 0.0) throw std::domain_error("phi: t must be >= 1");
  if (log2_t == 0.0) return 0.0;
  return detail::phi_increment(mu, 0.0, log2_t, tol);
}

/// Tabulated phi on [1, t_max], geometric nodes, monotone-cubic in log2 t.
class PhiTable {
 public:
  PhiTable(const Modulus& mu, double t_max, double tol = 1e-12) : mu_(mu) {
    if (!(t_max >= 1.0)) throw std::invalid_argument("build_phi: t_max >= 1");
    const double u_max = std::log2(std::max(t_max, 1.0 + 1e-12));
    const int segments = std::max(8, static_cast<int>(std::ceil(u_max * 64.0)));
    std::vector<double> us(static_cast<std::size_t>(segments) + 1);
    std::vector<double> ph(us.size(), 0.0);
    for (int i = 0; i <= segments; ++i) us[i] = u_max * i / segments;
    for (int i = 1; i <= segments; ++i) {
      ph[i] = ph[i - 1] + detail::phi_increment(mu_, us[i - 1], us[i], tol);
    }
    phi_max_ = ph.back();
    t_max_ = t_max;
    interp_ = MonotoneCubic(std::move(us), std::move(ph));
  }

  double operator()(double t) const {
    if (!(t >= 1.0 && t <= t_max_ * (1.0 + 1e-12))) {
      throw std::domain_error("phi: t outside [1, t_max]");
    }
    return interp_(std::min(std::log2(t), interp_.x_back()));
  }

  double t_max() const { return t_max_; }
  double phi_max() const { return phi_max_; }

 private:
  Modulus mu_;
  MonotoneCubic interp_;
  double t_max_ = 1.0;
  double phi_max_ = 0.0;
};

inline PhiTable build_phi(const Modulus& mu, double t_max, double tol = 1e-12) {
  return PhiTable(mu, t_max, tol);
}

/// Tabulated Phi, Phi', Phi'' on [0, tau_max].
class WeightTable {
 public:
  static WeightTable build(const Modulus& mu, double tau_max, double quad_tol = 1e-12) {
    if (!(tau_max > 0.0)) throw std::invalid_argument("WeightTable: tau_max > 0");
    WeightTable w;
    w.mu_ = mu;
    w.tau_max_ = tau_max;

    // March in u with step control keeping the tau spacing in a narrow band,
    // so the interpolants of log Phi' and log(1+Phi) stay accurate.
    const double dtau_lo = 0.004, dtau_hi = 0.04;
    const double u_hard_cap = 498.0;  // Phi' = 2^u must stay in double range
    std::vector<double> us{0.0}, taus{0.0}, lnPhi1p{0.0};
    double du = 1.0 / 64.0;
    double tau = 0.0, Phi = 0.0, u = 0.0;
    // March past tau_max so interior difference stencils at tau_max stay
    // inside the table.
    const double tau_stop = tau_max * (1.0 + 1e-9) + 0.02;
    while (tau < tau_stop) {
      double dtau = detail::phi_increment(mu, u, u + du, quad_tol);
      int halvings = 0;
      while (dtau > dtau_hi && halvings < 60) {
        du *= 0.5;
        dtau = detail::phi_increment(mu, u, u + du, quad_tol);
        ++halvings;
      }
      const double dPhi = detail::big_phi_increment(mu, u, u + du, quad_tol);
      u += du;
      tau += dtau;
      Phi += dPhi;
      us.push_back(u);
      taus.push_back(tau);
      lnPhi1p.push_back(std::log1p(Phi));
      if (u > u_hard_cap) {
        throw std::range_error(
            "WeightTable: Phi'(tau_max) exceeds double range; choose a smaller tau_max "
            "(reached tau = " + std::to_string(tau) + ")");
      }
      if (dtau < dtau_lo) du *= 2.0;
      if (du >= 64.0 && dtau < 1e-13 && tau < tau_max) {
        throw OsgoodRangeError(
            "WeightTable: phi is bounded (non-Osgood modulus); sup phi ~= " +
            std::to_string(tau) + " < tau_max = " + std::to_string(tau_max));
      }
    }
    w.tau_nodes_ = taus;
    w.u_of_tau_ = MonotoneCubic(taus, us);
    w.lnPhi1p_of_tau_ = MonotoneCubic(taus, lnPhi1p);
    w.phi_of_u_ = MonotoneCubic(std::move(us), std::move(taus));
    return w;
  }

  double tau_max() const { return tau_max_; }
  std::span<const double> tau_nodes() const { return tau_nodes_; }
  const Modulus& mu() const { return mu_; }

  /// phi(t) from the table (t = 2^u within the tabulated range).
  double phi(double t) const {
    if (!(t >= 1.0)) throw std::domain_error("WeightTable::phi: t >= 1");
    return phi_of_u_(std::log2(t));
  }

  /// phi(t) re-derived by quadrature from the nearest node (reference channel).
  double phi_refined(double t) const { return phi_refined_u(std::log2(t)); }

  double Phi(double tau) const { return std::expm1(lnPhi1p_of_tau_(check(tau))); }
  double Phi_prime(double tau) const { return std::exp2(u_of_tau_(check(tau))); }
  double log2_Phi_prime(double tau) const { return u_of_tau_(check(tau)); }

  /// Phi'' from the defining identity (Phi')^2 mu(1/Phi').
  double Phi_double_prime(double tau) const { return ode_side(Phi_prime(tau)); }

  /// phi^{-1}(tau) by monotone bracketing root finding, |dt| <= ~1e-12 t.
  double phi_inverse_refined(double tau) const {
    check(tau);
    if (tau == 0.0) return 1.0;
    const double u0 = u_of_tau_(tau);
    double lo = std::max(0.0, u0 - 1e-6 * (1.0 + u0));
    double hi = u0 + 1e-6 * (1.0 + u0);
    double flo = phi_refined_u(lo) - tau;
    double fhi = phi_refined_u(hi) - tau;
    int guard = 0;
    while (flo * fhi > 0.0 && guard++ < 60) {
      const double width = hi - lo;
      lo = std::max(0.0, lo - width);
      hi = hi + width;
      flo = phi_refined_u(lo) - tau;
      fhi = phi_refined_u(hi) - tau;
    }
    if (flo * fhi > 0.0) throw std::runtime_error("phi_inverse: bracketing failed (monotonicity violation?)");
    const double u = brent_root([&](double x) { return phi_refined_u(x) - tau; }, lo, hi, 1.4e-12);
    return std::exp2(u);
  }

  /// Relative defect of the identity Phi'' = (Phi')^2 mu(1/Phi'), with Phi''
  /// taken from a 4th-order difference of the root-found inverse. This is the
  /// verification channel; the stored Phi'' is the identity side.
  double ode_residual(double tau, double h = 4e-3) const {
    // Keep h * (log Phi')' small; the stencil error scales like its 4th power.
    const double lambda = std::max(1.0, Phi_double_prime(tau) / Phi_prime(tau));
    h = std::min({h, 0.005 / lambda, 0.4 * tau, 0.4 * (tau_nodes_.back() - tau)});
    if (!(h > 0.0)) throw std::domain_error("ode_residual: interior tau required");
    const double fd = fd_derivative4([&](double x) { return phi_inverse_refined(x); }, tau, h);
    const double ode = ode_side(phi_inverse_refined(tau));
    return std::abs(fd - ode) / ode;
  }

 private:
  double check(double tau) const {
    if (!(tau >= 0.0 && tau <= tau_nodes_.back() * (1.0 + 1e-12))) {
      throw OsgoodRangeError("WeightTable: tau = " + std::to_string(tau) +
                             " outside tabulated range [0, " + std::to_string(tau_nodes_.back()) + "]");
    }
    return std::min(tau, tau_nodes_.back());
  }

  double ode_side(double p) const { return p * p * mu_(std::min(1.0, 1.0 / p)); }

  double phi_refined_u(double u) const {
    if (u <= 0.0) return 0.0;
    // Start from the nearest tabulated node at or below u.
    const auto& xs = phi_of_u_.xs();
    const auto it = std::upper_bound(xs.begin(), xs.end(), u);
    std::size_t i = static_cast<std::size_t>(it - xs.begin());
    if (i > 0) --i;
    return phi_of_u_.ys()[i] + detail::phi_increment(mu_, xs[i], u, 1e-13);
  }

  Modulus mu_;
  double tau_max_ = 0.0;
  std::vector<double> tau_nodes_;
  MonotoneCubic u_of_tau_, lnPhi1p_of_tau_, phi_of_u_;
};

}  // namespace paley
