#pragma once
// Radial dyadic cutoffs. chi equals 1 on r <= 3/4 and 0 on r >= 4/3, built by
// mollifying the step with the normalized bump exp(-1/(x(1-x))); the annulus
// profile is always the difference
//     phi_cut(r) = chi(r/2) - chi(r),
// so the telescoping partition chi(r) + sum_q phi_cut(2^-q r) = 1 holds to the
// last bit (halving an argument is exact in binary floating point).

#include <cmath>
#include <vector>

#include "paley/numerics.hpp"

namespace paley {

class CutoffPair {
 public:
  /// sharpness in (0, 1]: fraction of [3/4, 4/3] occupied by the transition,
  /// centered; 1 means the transition fills the whole gap (default).
  explicit CutoffPair(double sharpness = 1.0) {
    if (!(sharpness > 0.0 && sharpness <= 1.0)) {
      throw std::invalid_argument("CutoffPair: sharpness in (0,1]");
    }
    const double inner = 0.75, outer = 4.0 / 3.0;
    const double mid = 0.5 * (inner + outer);
    const double half = 0.5 * (outer - inner) * sharpness;
    lo_ = mid - half;
    hi_ = mid + half;
    build_table();
  }

  /// Smooth low-pass profile: 1 below the transition, 0 above.
  double chi(double r) const {
    r = std::abs(r);
    if (r <= lo_) return 1.0;
    if (r >= hi_) return 0.0;
    return 1.0 - cumulative((r - lo_) / (hi_ - lo_));
  }

  /// Annulus profile chi(r/2) - chi(r); support in [3/4, 8/3].
  double phi_cut(double r) const { return chi(0.5 * r) - chi(r); }

  double transition_lo() const { return lo_; }
  double transition_hi() const { return hi_; }

 private:
  static double bump(double x) {
    if (x <= 0.0 || x >= 1.0) return 0.0;
    return std::exp(-1.0 / (x * (1.0 - x)));
  }

  void build_table() {
    // Cumulative integral of the normalized bump on a fine uniform grid;
    // evaluated later with a Hermite cubic using the exact integrand values
    // as derivatives.
    const int n = 4096;
    val_.assign(n + 1, 0.0);
    der_.assign(n + 1, 0.0);
    const double h = 1.0 / n;
    // 16-point Gauss-Legendre nodes/weights on [0,1].
    static const double gx[8] = {0.0052995325041750, 0.0277124884633837, 0.0671843988060841,
                                 0.1222977958224985, 0.1910618777986781, 0.2709916111713863,
                                 0.3591982246103705, 0.4524937450811813};
    static const double gw[8] = {0.0135762297058770, 0.0311267619693239, 0.0475792558412464,
                                 0.0623144856277669, 0.0747979944082884, 0.0845782596975013,
                                 0.0913017075224618, 0.0947253052275343};
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
      const double a = i * h;
      double seg = 0.0;
      for (int k = 0; k < 8; ++k) {
        seg += gw[k] * (bump(a + h * gx[k]) + bump(a + h * (1.0 - gx[k])));
      }
      acc += seg * h;
      val_[i + 1] = acc;
    }
    norm_ = acc;
    for (int i = 0; i <= n; ++i) {
      val_[i] /= norm_;
      der_[i] = bump(i * h) / norm_;
    }
  }

  // Normalized cumulative bump integral at y in [0,1].
  double cumulative(double y) const {
    const int n = static_cast<int>(val_.size()) - 1;
    double u = y * n;
    int i = static_cast<int>(u);
    if (i >= n) i = n - 1;
    const double t = u - i;
    const double h = 1.0 / n;
    const double h00 = (1.0 + 2.0 * t) * sq(1.0 - t);
    const double h10 = t * sq(1.0 - t);
    const double h01 = t * t * (3.0 - 2.0 * t);
    const double h11 = t * t * (t - 1.0);
    return h00 * val_[i] + h * h10 * der_[i] + h01 * val_[i + 1] + h * h11 * der_[i + 1];
  }

  double lo_ = 0.75, hi_ = 4.0 / 3.0, norm_ = 1.0;
  std::vector<double> val_, der_;
};

inline const CutoffPair& standard_cutoffs() {
  static const CutoffPair c(1.0);
  return c;
}

inline CutoffPair build_cutoffs(double sharpness = 1.0) { return CutoffPair(sharpness); }

}  // namespace paley
