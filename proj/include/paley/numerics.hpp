#pragma once
// Shared numerical kernels: adaptive quadrature, monotone cubic interpolation,
// bracketed root finding, small finite-difference stencils.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace paley {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

inline double sq(double x) { return x * x; }

inline bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

// ---------------------------------------------------------------------------
// Adaptive Simpson quadrature.
// ---------------------------------------------------------------------------

namespace detail {

template <class F>
double simpson_rec(const F& f, double a, double b, double fa, double fm, double fb,
                   double whole, double tol, double floor, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * (tol * (std::abs(left) + std::abs(right)) + floor)) {
    return left + right + delta / 15.0;
  }
  return simpson_rec(f, a, m, fa, flm, fm, left, tol, 0.5 * floor, depth - 1) +
         simpson_rec(f, m, b, fm, frm, fb, right, tol, 0.5 * floor, depth - 1);
}

}  // namespace detail

/// Integral of f over [a, b]; tol is relative, abs_floor guards vanishing integrals.
template <class F>
double integrate(const F& f, double a, double b, double tol = 1e-11,
                 double abs_floor = 1e-300, int max_depth = 52) {
  if (a == b) return 0.0;
  if (!(b > a)) throw std::invalid_argument("integrate: inverted interval");
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(0.5 * (a + b));
  if (!std::isfinite(fa) || !std::isfinite(fb) || !std::isfinite(fm)) {
    throw std::runtime_error("integrate: non-finite integrand sample");
  }
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return detail::simpson_rec(f, a, b, fa, fm, fb, whole, tol, abs_floor, max_depth);
}

// ---------------------------------------------------------------------------
// Monotone piecewise-cubic interpolation (Fritsch-Carlson).
// Preserves monotonicity of the data; C^1.
// ---------------------------------------------------------------------------

class MonotoneCubic {
 public:
  MonotoneCubic() = default;

  MonotoneCubic(std::vector<double> x, std::vector<double> y)
      : x_(std::move(x)), y_(std::move(y)) {
    const std::size_t n = x_.size();
    if (n < 2 || y_.size() != n) throw std::invalid_argument("MonotoneCubic: bad data");
    for (std::size_t i = 1; i < n; ++i) {
      if (!(x_[i] > x_[i - 1])) throw std::invalid_argument("MonotoneCubic: x not increasing");
    }
    d_.assign(n, 0.0);
    std::vector<double> sec(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) sec[i] = (y_[i + 1] - y_[i]) / (x_[i + 1] - x_[i]);
    // Interior slopes: weighted harmonic mean when secants share a sign.
    for (std::size_t i = 1; i + 1 < n; ++i) {
      if (sec[i - 1] * sec[i] <= 0.0) {
        d_[i] = 0.0;
      } else {
        const double h0 = x_[i] - x_[i - 1];
        const double h1 = x_[i + 1] - x_[i];
        const double w1 = 2.0 * h1 + h0;
        const double w2 = h1 + 2.0 * h0;
        d_[i] = (w1 + w2) / (w1 / sec[i - 1] + w2 / sec[i]);
      }
    }
    d_[0] = end_slope(sec[0], n > 2 ? sec[1] : sec[0], x_[1] - x_[0],
                      n > 2 ? x_[2] - x_[1] : x_[1] - x_[0]);
    d_[n - 1] = end_slope(sec[n - 2], n > 2 ? sec[n - 3] : sec[n - 2], x_[n - 1] - x_[n - 2],
                          n > 2 ? x_[n - 2] - x_[n - 3] : x_[n - 1] - x_[n - 2]);
  }

  double operator()(double x) const {
    const std::size_t i = locate(x);
    const double h = x_[i + 1] - x_[i];
    const double t = (x - x_[i]) / h;
    const double h00 = (1.0 + 2.0 * t) * sq(1.0 - t);
    const double h10 = t * sq(1.0 - t);
    const double h01 = t * t * (3.0 - 2.0 * t);
    const double h11 = t * t * (t - 1.0);
    return h00 * y_[i] + h * h10 * d_[i] + h01 * y_[i + 1] + h * h11 * d_[i + 1];
  }

  double derivative(double x) const {
    const std::size_t i = locate(x);
    const double h = x_[i + 1] - x_[i];
    const double t = (x - x_[i]) / h;
    const double g00 = 6.0 * t * (t - 1.0) / h;
    const double g10 = (3.0 * t - 1.0) * (t - 1.0);
    const double g11 = t * (3.0 * t - 2.0);
    return g00 * (y_[i] - y_[i + 1]) + g10 * d_[i] + g11 * d_[i + 1];
  }

  double x_front() const { return x_.front(); }
  double x_back() const { return x_.back(); }
  std::span<const double> xs() const { return x_; }
  std::span<const double> ys() const { return y_; }

 private:
  static double end_slope(double s0, double s1, double h0, double h1) {
    // One-sided three-point estimate, clamped to keep monotonicity.
    double d = ((2.0 * h0 + h1) * s0 - h0 * s1) / (h0 + h1);
    if (d * s0 <= 0.0) return 0.0;
    if (std::abs(d) > 3.0 * std::abs(s0)) return 3.0 * s0;
    return d;
  }

  std::size_t locate(double x) const {
    if (!(x >= x_.front() && x <= x_.back())) {
      throw std::domain_error("MonotoneCubic: query outside table [" +
                              std::to_string(x_.front()) + ", " + std::to_string(x_.back()) +
                              "]: " + std::to_string(x));
    }
    const auto it = std::upper_bound(x_.begin(), x_.end(), x);
    std::size_t i = static_cast<std::size_t>(it - x_.begin());
    if (i > 0) --i;
    if (i + 1 >= x_.size()) i = x_.size() - 2;
    return i;
  }

  std::vector<double> x_, y_, d_;
};

// ---------------------------------------------------------------------------
// Brent root finding on a bracketing interval.
// ---------------------------------------------------------------------------

template <class F>
double brent_root(const F& f, double a, double b, double tol_abs, int max_iter = 200) {
  double fa = f(a);
  double fb = f(b);
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if (fa * fb > 0.0) throw std::runtime_error("brent_root: interval does not bracket a root");
  double c = a, fc = fa, d = b - a, e = d;
  for (int it = 0; it < max_iter; ++it) {
    if (std::abs(fc) < std::abs(fb)) {
      a = b; b = c; c = a;
      fa = fb; fb = fc; fc = fa;
    }
    const double tol = 2.0 * std::numeric_limits<double>::epsilon() * std::abs(b) + 0.5 * tol_abs;
    const double xm = 0.5 * (c - b);
    if (std::abs(xm) <= tol || fb == 0.0) return b;
    if (std::abs(e) >= tol && std::abs(fa) > std::abs(fb)) {
      double p, q, r;
      const double s = fb / fa;
      if (a == c) {
        p = 2.0 * xm * s;
        q = 1.0 - s;
      } else {
        q = fa / fc;
        r = fb / fc;
        p = s * (2.0 * xm * q * (q - r) - (b - a) * (r - 1.0));
        q = (q - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0.0) q = -q;
      p = std::abs(p);
      if (2.0 * p < std::min(3.0 * xm * q - std::abs(tol * q), std::abs(e * q))) {
        e = d;
        d = p / q;
      } else {
        d = xm;
        e = d;
      }
    } else {
      d = xm;
      e = d;
    }
    a = b;
    fa = fb;
    b += (std::abs(d) > tol) ? d : (xm > 0.0 ? tol : -tol);
    fb = f(b);
    if ((fb > 0.0) == (fc > 0.0)) {
      c = a;
      fc = fa;
      d = b - a;
      e = d;
    }
  }
  return b;
}

// Centered 4th-order first derivative of a callable.
template <class F>
double fd_derivative4(const F& f, double x, double h) {
  return (-f(x + 2.0 * h) + 8.0 * f(x + h) - 8.0 * f(x - h) + f(x - 2.0 * h)) / (12.0 * h);
}

}  // namespace paley
