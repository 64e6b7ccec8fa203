#pragma once
// Thin FFTW3 wrapper. Plans are cached per (shape, direction) in thread-local
// storage; data is staged through the plan's own buffers so alignment is never
// an issue. Forward returns Fourier coefficients (DFT / size); inverse takes
// coefficients back to samples.

#include <fftw3.h>

#include <complex>
#include <map>
#include <memory>
#include <span>
#include <stdexcept>
#include <tuple>

namespace paley::dft {

namespace detail {

struct Plan {
  fftw_plan plan = nullptr;
  std::vector<std::complex<double>> in, out;

  Plan(int n0, int n1, int sign) : in(std::size_t(n0) * n1), out(std::size_t(n0) * n1) {
    auto* pi = reinterpret_cast<fftw_complex*>(in.data());
    auto* po = reinterpret_cast<fftw_complex*>(out.data());
    plan = (n1 == 1) ? fftw_plan_dft_1d(n0, pi, po, sign, FFTW_ESTIMATE)
                     : fftw_plan_dft_2d(n0, n1, pi, po, sign, FFTW_ESTIMATE);
    if (!plan) throw std::runtime_error("fftw plan creation failed");
  }
  ~Plan() {
    if (plan) fftw_destroy_plan(plan);
  }
  Plan(const Plan&) = delete;
  Plan& operator=(const Plan&) = delete;
};

inline Plan& cached_plan(int n0, int n1, int sign) {
  thread_local std::map<std::tuple<int, int, int>, std::unique_ptr<Plan>> cache;
  const auto key = std::tuple{n0, n1, sign};
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, std::make_unique<Plan>(n0, n1, sign)).first;
  return *it->second;
}

inline void run(std::span<const std::complex<double>> src, std::span<std::complex<double>> dst,
                int n0, int n1, int sign, double scale) {
  const std::size_t total = std::size_t(n0) * n1;
  if (src.size() != total || dst.size() != total) throw std::invalid_argument("dft: size mismatch");
  auto& p = cached_plan(n0, n1, sign);
  std::copy(src.begin(), src.end(), p.in.begin());
  fftw_execute(p.plan);
  for (std::size_t i = 0; i < total; ++i) dst[i] = p.out[i] * scale;
}

}  // namespace detail

/// samples -> Fourier coefficients (normalized by 1/size).
inline void coefficients(std::span<const std::complex<double>> samples,
                         std::span<std::complex<double>> coeffs, int n0, int n1 = 1) {
  detail::run(samples, coeffs, n0, n1, FFTW_FORWARD, 1.0 / (double(n0) * n1));
}

/// Fourier coefficients -> samples.
inline void samples(std::span<const std::complex<double>> coeffs,
                    std::span<std::complex<double>> out, int n0, int n1 = 1) {
  detail::run(coeffs, out, n0, n1, FFTW_BACKWARD, 1.0);
}

}  // namespace paley::dft
