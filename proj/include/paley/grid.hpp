#pragma once
// Periodic grids and grid functions in dimension 1 or 2. A GridFunction keeps
// both its samples and its Fourier coefficients; the two stay consistent by
// construction and all linear operations update both without transforms.
//
// Conventions:
//   * per-axis size N is a power of two; 2D arrays are row-major (slow index
//     first), matching the FFT layout;
//   * mode index m in [-N/2, N/2), frequency xi = 2 pi m / L;
//   * ||u||_{L2}^2 = L^n sum_k |c_k|^2 (discrete Parseval, exact).

#include <complex>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "paley/fft.hpp"
#include "paley/numerics.hpp"

namespace paley {

using cplx = std::complex<double>;

struct Grid {
  int dim = 1;
  int n = 0;            // samples per axis
  double period = kTwoPi;

  std::size_t size() const { return dim == 1 ? std::size_t(n) : std::size_t(n) * n; }
  double spacing() const { return period / n; }
  double nyquist() const { return kPi * n / period; }  // per-axis |xi| cap
  bool operator==(const Grid&) const = default;

  void validate() const {
    if (dim != 1 && dim != 2) throw std::invalid_argument("Grid: dim must be 1 or 2");
    if (!is_power_of_two(n)) throw std::invalid_argument("Grid: n must be a power of two");
    if (!(period > 0.0)) throw std::invalid_argument("Grid: period must be positive");
  }
};

/// Signed mode index for FFT bin k of an axis of size n.
inline int mode_of(int n, int k) { return k < n / 2 ? k : k - n; }

/// |xi| at flat spectrum index.
inline double xi_abs(const Grid& g, std::size_t idx) {
  const double base = kTwoPi / g.period;
  if (g.dim == 1) return base * std::abs(mode_of(g.n, static_cast<int>(idx)));
  const int ky = static_cast<int>(idx) / g.n;
  const int kx = static_cast<int>(idx) % g.n;
  const double mx = mode_of(g.n, kx);
  const double my = mode_of(g.n, ky);
  return base * std::sqrt(mx * mx + my * my);
}

/// xi component along `axis` at flat spectrum index.
inline double xi_component(const Grid& g, std::size_t idx, int axis) {
  const double base = kTwoPi / g.period;
  if (g.dim == 1) return base * mode_of(g.n, static_cast<int>(idx));
  const int k = (axis == 0) ? static_cast<int>(idx) % g.n : static_cast<int>(idx) / g.n;
  return base * mode_of(g.n, k);
}

class GridFunction {
 public:
  GridFunction() = default;

  static GridFunction from_samples(const Grid& g, std::vector<cplx> s, bool declared_real = false) {
    g.validate();
    if (s.size() != g.size()) throw std::invalid_argument("GridFunction: sample count mismatch");
    GridFunction u;
    u.grid_ = g;
    u.declared_real_ = declared_real;
    u.samples_ = std::move(s);
    u.spectrum_.resize(u.samples_.size());
    dft::coefficients(u.samples_, u.spectrum_, g.dim == 1 ? g.n : g.n, g.dim == 1 ? 1 : g.n);
    return u;
  }

  static GridFunction from_spectrum(const Grid& g, std::vector<cplx> c, bool declared_real = false) {
    g.validate();
    if (c.size() != g.size()) throw std::invalid_argument("GridFunction: spectrum size mismatch");
    GridFunction u;
    u.grid_ = g;
    u.declared_real_ = declared_real;
    u.spectrum_ = std::move(c);
    u.samples_.resize(u.spectrum_.size());
    dft::samples(u.spectrum_, u.samples_, g.dim == 1 ? g.n : g.n, g.dim == 1 ? 1 : g.n);
    return u;
  }

  static GridFunction zero(const Grid& g) {
    g.validate();
    GridFunction u;
    u.grid_ = g;
    u.declared_real_ = true;
    u.samples_.assign(g.size(), cplx{0.0, 0.0});
    u.spectrum_.assign(g.size(), cplx{0.0, 0.0});
    return u;
  }

  const Grid& grid() const { return grid_; }
  bool declared_real() const { return declared_real_; }
  bool empty() const { return samples_.empty(); }
  std::span<const cplx> samples() const { return samples_; }
  std::span<const cplx> spectrum() const { return spectrum_; }

  double l2() const {
    double acc = 0.0;
    for (const auto& c : spectrum_) acc += std::norm(c);
    return std::sqrt(acc * measure());
  }

  double linf() const {
    double m = 0.0;
    for (const auto& v : samples_) m = std::max(m, std::abs(v));
    return m;
  }

  double max_imag() const {
    double m = 0.0;
    for (const auto& v : samples_) m = std::max(m, std::abs(v.imag()));
    return m;
  }

  /// L^n measure factor turning coefficient sums into L2 integrals.
  double measure() const { return grid_.dim == 1 ? grid_.period : grid_.period * grid_.period; }

  /// Spectral mass (coefficient energy) strictly outside |xi| <= r.
  double mass_outside(double r) const {
    double acc = 0.0;
    for (std::size_t i = 0; i < spectrum_.size(); ++i) {
      if (xi_abs(grid_, i) > r) acc += std::norm(spectrum_[i]);
    }
    return acc * measure();
  }

  /// New function with spectrum multiplied by fn(flat index).
  template <class Fn>
  GridFunction filtered(Fn&& fn, bool result_real) const {
    std::vector<cplx> c(spectrum_.size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = spectrum_[i] * fn(i);
    return from_spectrum(grid_, std::move(c), result_real && declared_real_);
  }

 private:
  Grid grid_;
  bool declared_real_ = false;
  std::vector<cplx> samples_;
  std::vector<cplx> spectrum_;
};

// Linear combinations update both representations directly.
inline GridFunction axpy(double a, const GridFunction& x, double b, const GridFunction& y) {
  if (!(x.grid() == y.grid())) throw std::invalid_argument("axpy: grid mismatch");
  std::vector<cplx> c(x.spectrum().size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = a * x.spectrum()[i] + b * y.spectrum()[i];
  return GridFunction::from_spectrum(x.grid(), std::move(c),
                                     x.declared_real() && y.declared_real());
}

inline GridFunction scaled(const GridFunction& x, double a) {
  std::vector<cplx> c(x.spectrum().begin(), x.spectrum().end());
  for (auto& v : c) v *= a;
  return GridFunction::from_spectrum(x.grid(), std::move(c), x.declared_real());
}

inline double l2_distance(const GridFunction& x, const GridFunction& y) {
  if (!(x.grid() == y.grid())) throw std::invalid_argument("l2_distance: grid mismatch");
  double acc = 0.0;
  for (std::size_t i = 0; i < x.spectrum().size(); ++i) {
    acc += std::norm(x.spectrum()[i] - y.spectrum()[i]);
  }
  return std::sqrt(acc * x.measure());
}

/// Inner product <x, y> = L^n sum c_x conj(c_y).
inline cplx inner(const GridFunction& x, const GridFunction& y) {
  if (!(x.grid() == y.grid())) throw std::invalid_argument("inner: grid mismatch");
  cplx acc{0.0, 0.0};
  for (std::size_t i = 0; i < x.spectrum().size(); ++i) {
    acc += x.spectrum()[i] * std::conj(y.spectrum()[i]);
  }
  return acc * x.measure();
}

// ---------------------------------------------------------------------------
// Uniform time axis and time-dependent grid functions.
// ---------------------------------------------------------------------------

struct TimeAxis {
  double T = 1.0;
  int samples = 0;  // node count; nodes t_i = i T / (samples - 1), endpoints included

  double dt() const { return T / (samples - 1); }
  double t(int i) const { return T * i / (samples - 1); }
  void validate() const {
    if (samples < 5) throw std::invalid_argument("TimeAxis: need at least 5 samples");
    if (!(T > 0.0)) throw std::invalid_argument("TimeAxis: T must be positive");
  }
};

class TimeGridFunction {
 public:
  TimeGridFunction() = default;
  TimeGridFunction(TimeAxis axis, std::vector<GridFunction> slices)
      : axis_(axis), slices_(std::move(slices)) {
    axis_.validate();
    if (slices_.size() != static_cast<std::size_t>(axis_.samples)) {
      throw std::invalid_argument("TimeGridFunction: slice count mismatch");
    }
    for (const auto& s : slices_) {
      if (!(s.grid() == slices_.front().grid())) {
        throw std::invalid_argument("TimeGridFunction: inconsistent grids");
      }
    }
  }

  const TimeAxis& axis() const { return axis_; }
  const Grid& grid() const { return slices_.front().grid(); }
  int time_samples() const { return axis_.samples; }
  const GridFunction& slice(int i) const { return slices_.at(static_cast<std::size_t>(i)); }

  /// Max |value| over all (t, x).
  double linf() const {
    double m = 0.0;
    for (const auto& s : slices_) m = std::max(m, s.linf());
    return m;
  }

 private:
  TimeAxis axis_;
  std::vector<GridFunction> slices_;
};

/// 4th-order centered time derivative at node i; the field is extended by zero
/// outside its axis (intended for compactly supported-in-time data).
inline GridFunction time_derivative4(const TimeGridFunction& u, int i) {
  const double dt = u.axis().dt();
  const auto& g = u.grid();
  auto at = [&](int j) -> const GridFunction* {
    return (j >= 0 && j < u.time_samples()) ? &u.slice(j) : nullptr;
  };
  std::vector<cplx> c(g.size(), cplx{0.0, 0.0});
  const double w[4] = {1.0 / (12.0 * dt), -8.0 / (12.0 * dt), 8.0 / (12.0 * dt), -1.0 / (12.0 * dt)};
  const int off[4] = {-2, -1, 1, 2};
  bool real = true;
  for (int k = 0; k < 4; ++k) {
    if (const auto* s = at(i + off[k])) {
      real = real && s->declared_real();
      for (std::size_t j = 0; j < c.size(); ++j) c[j] += w[k] * s->spectrum()[j];
    }
  }
  return GridFunction::from_spectrum(g, std::move(c), real);
}

}  // namespace paley
