#pragma once
// Bony's paraproduct and the product decomposition
//   Delta_q(ab) = S_{q-1}a Delta_q b + R_q^{(1)} + R_q^{(2)} + R_q^{(3)}
// with the commutator, cutoff-shift and high-high tail pieces, plus the
// measured-constant verifier for the weighted remainder estimate.
//
// Pointwise products are always evaluated on a 2x zero-padded grid and
// truncated back spectrally, so no aliased content ever enters a block.

#include <array>
#include <map>
#include <vector>

#include "paley/holder.hpp"
#include "paley/lp.hpp"

namespace paley {

/// Re-sample a spectrum onto a grid with n_new points per axis. Growing pads
/// with zeros (the Nyquist bin is split evenly to preserve real symmetry);
/// shrinking keeps the representable modes.
inline GridFunction resample(const GridFunction& u, int n_new) {
  const Grid& g = u.grid();
  if (n_new == g.n) return u;
  Grid g2 = g;
  g2.n = n_new;
  g2.validate();
  std::vector<cplx> c(g2.size(), cplx{0.0, 0.0});
  const int half_small = std::min(g.n, n_new) / 2;
  auto bin = [](const Grid& gg, int mx, int my) -> std::size_t {
    const int kx = mx >= 0 ? mx : mx + gg.n;
    if (gg.dim == 1) return static_cast<std::size_t>(kx);
    const int ky = my >= 0 ? my : my + gg.n;
    return std::size_t(ky) * gg.n + kx;
  };
  const bool growing = n_new > g.n;
  auto copy_mode = [&](int mx, int my) {
    // Source Nyquist rows/columns are split in half when growing.
    double w = 1.0;
    if (growing) {
      if (std::abs(mx) == half_small) w *= 0.5;
      if (g.dim == 2 && std::abs(my) == half_small) w *= 0.5;
    }
    auto src = [&](int sx, int sy) { return u.spectrum()[bin(g, sx, sy)]; };
    const int sx = (mx == half_small) ? -half_small : mx;
    const int sy = (my == half_small) ? -half_small : my;
    c[bin(g2, mx, my)] += w * src(sx, sy);
  };
  const int mmax = growing ? half_small : half_small - 1;
  if (g.dim == 1) {
    for (int mx = -mmax; mx <= mmax; ++mx) copy_mode(mx, 0);
    if (!growing) copy_mode(-half_small, 0);
  } else {
    const int lo = growing ? -mmax : -half_small;
    for (int my = lo; my <= mmax; ++my) {
      for (int mx = lo; mx <= mmax; ++mx) copy_mode(mx, my);
    }
  }
  return GridFunction::from_spectrum(g2, std::move(c), u.declared_real());
}

/// Alias-free pointwise product: both factors move to the doubled grid, the
/// product is formed there, and the result returns to the parent grid.
inline GridFunction dealiased_product(const GridFunction& a, const GridFunction& b) {
  if (!(a.grid() == b.grid())) throw std::invalid_argument("dealiased_product: grid mismatch");
  const int n2 = 2 * a.grid().n;
  const auto ap = resample(a, n2);
  const auto bp = resample(b, n2);
  std::vector<cplx> prod(ap.samples().size());
  for (std::size_t i = 0; i < prod.size(); ++i) prod[i] = ap.samples()[i] * bp.samples()[i];
  const auto wide = GridFunction::from_samples(ap.grid(), std::move(prod),
                                               a.declared_real() && b.declared_real());
  return resample(wide, a.grid().n);
}

/// Bony paraproduct T_a b = sum_{q >= 1} S_{q-1}a Delta_q b.
inline GridFunction paraproduct(const GridFunction& a, const GridFunction& b,
                                const CutoffPair& cut = standard_cutoffs()) {
  if (!(a.grid() == b.grid())) throw std::invalid_argument("paraproduct: grid mismatch");
  assert_resolved(a, "paraproduct");
  assert_resolved(b, "paraproduct");
  auto acc = GridFunction::zero(a.grid());
  for (int q = 1; q <= q_complete(a.grid()); ++q) {
    acc = axpy(1.0, acc, 1.0, dealiased_product(s_q(a, q - 1, cut), delta_q(b, q, cut)));
  }
  return acc;
}

/// Remainder R(a,b) = sum_q Delta_q a (Delta_{q-1} + Delta_q + Delta_{q+1}) b.
inline GridFunction remainder(const GridFunction& a, const GridFunction& b,
                              const CutoffPair& cut = standard_cutoffs()) {
  if (!(a.grid() == b.grid())) throw std::invalid_argument("remainder: grid mismatch");
  assert_resolved(a, "remainder");
  assert_resolved(b, "remainder");
  auto acc = GridFunction::zero(a.grid());
  const int qc = q_complete(a.grid());
  for (int q = -1; q <= qc; ++q) {
    auto tilde = GridFunction::zero(a.grid());
    for (int i = -1; i <= 1; ++i) {
      if (q + i >= -1 && q + i <= qc) tilde = axpy(1.0, tilde, 1.0, delta_q(b, q + i, cut));
    }
    acc = axpy(1.0, acc, 1.0, dealiased_product(delta_q(a, q, cut), tilde));
  }
  return acc;
}

/// tilde R(a,b) = sum_{q' >= -1} S_{q'+2}b Delta_{q'} a (= T_b a + R(a,b)).
inline GridFunction tilde_remainder(const GridFunction& a, const GridFunction& b,
                                    const CutoffPair& cut = standard_cutoffs()) {
  if (!(a.grid() == b.grid())) throw std::invalid_argument("tilde_remainder: grid mismatch");
  assert_resolved(a, "tilde_remainder");
  assert_resolved(b, "tilde_remainder");
  auto acc = GridFunction::zero(a.grid());
  for (int q = -1; q <= q_complete(a.grid()); ++q) {
    acc = axpy(1.0, acc, 1.0, dealiased_product(s_q(b, q + 2, cut), delta_q(a, q, cut)));
  }
  return acc;
}

// ---------------------------------------------------------------------------
// Per-block product decomposition.
// ---------------------------------------------------------------------------

struct ProductDecomposition {
  int q = 0;
  GridFunction main;  // S_{q-1}a Delta_q b
  GridFunction r1;    // commutators  [Delta_q, S_{q'-1}a] Delta_{q'} b
  GridFunction r2;    // cutoff shift (S_{q'-1} - S_{q-1})a Delta_q Delta_{q'} b
  GridFunction r3;    // high-high    Delta_q(S_{q'+2}b Delta_{q'} a)
  double reconstruction_residual = 0.0;  // vs Delta_q(ab), relative L2
  double out_of_ball_mass = 0.0;         // spectral mass outside |xi| <= 10/3 2^q
};

/// Largest q for which the decomposition fits inside the grid with the
/// mandated 10/3 margin.
inline int q_product_cap(const Grid& g) {
  int q = -1;
  while ((10.0 / 3.0) * std::exp2(q + 1) <= g.nyquist()) ++q;
  return q;
}

inline ProductDecomposition decompose_product(const GridFunction& a, const GridFunction& b, int q,
                                              const CutoffPair& cut = standard_cutoffs()) {
  if (!(a.grid() == b.grid())) throw std::invalid_argument("decompose_product: grid mismatch");
  if (q < -1 || q > q_product_cap(a.grid())) {
    throw std::invalid_argument("decompose_product: q outside the margin-compatible range [-1, " +
                                std::to_string(q_product_cap(a.grid())) + "]");
  }
  assert_resolved(a, "decompose_product");
  assert_resolved(b, "decompose_product");
  const Grid& g = a.grid();
  const int qc = q_complete(g);

  ProductDecomposition out;
  out.q = q;
  out.main = dealiased_product(s_q(a, q - 1, cut), delta_q(b, q, cut));

  out.r1 = GridFunction::zero(g);
  out.r2 = GridFunction::zero(g);
  for (int qp = std::max(-1, q - 4); qp <= std::min(qc, q + 4); ++qp) {
    const auto Sa = s_q(a, qp - 1, cut);
    const auto Db = delta_q(b, qp, cut);
    // [Delta_q, S_{q'-1}a] Delta_{q'} b
    const auto comm = axpy(1.0, delta_q(dealiased_product(Sa, Db), q, cut), -1.0,
                           dealiased_product(Sa, delta_q(Db, q, cut)));
    out.r1 = axpy(1.0, out.r1, 1.0, comm);
    // (S_{q'-1} - S_{q-1})a Delta_q Delta_{q'} b; the double block vanishes
    // identically unless |q - q'| <= 1.
    if (std::abs(qp - q) <= 1) {
      const auto shift = axpy(1.0, Sa, -1.0, s_q(a, q - 1, cut));
      out.r2 = axpy(1.0, out.r2, 1.0, dealiased_product(shift, delta_q(Db, q, cut)));
    }
  }
  out.r3 = GridFunction::zero(g);
  for (int qp = std::max(-1, q - 3); qp <= qc; ++qp) {
    out.r3 = axpy(1.0, out.r3, 1.0,
                  delta_q(dealiased_product(s_q(b, qp + 2, cut), delta_q(a, qp, cut)), q, cut));
  }

  const auto sum = axpy(1.0, axpy(1.0, out.main, 1.0, out.r1), 1.0, axpy(1.0, out.r2, 1.0, out.r3));
  const auto ref = delta_q(dealiased_product(a, b), q, cut);
  const double refn = ref.l2();
  const double scale = a.linf() * b.l2() + b.linf() * a.l2();
  if (std::max(refn, sum.l2()) <= 1e-12 * scale) {
    // The block of ab is empty; both sides vanished to roundoff.
    out.reconstruction_residual = 0.0;
    out.out_of_ball_mass = 0.0;
    return out;
  }
  out.reconstruction_residual = l2_distance(sum, ref) / refn;
  out.out_of_ball_mass = sum.mass_outside((10.0 / 3.0) * std::exp2(q)) / sq(sum.l2());
  if (out.reconstruction_residual > 1e-8) {
    throw std::runtime_error("decompose_product: reconstruction residual " +
                             std::to_string(out.reconstruction_residual) + " above tolerance");
  }
  return out;
}

// ---------------------------------------------------------------------------
// Measured constants for the weighted remainder estimate.
// ---------------------------------------------------------------------------

struct RemainderRatios {
  std::array<double, 3> numerator{};  // (sum_q 2^{2(1-s)q} ||R_q^{(i)}||^2)^{1/2}
  double a_norm = 0.0;                // C^omega norm of a
  double b_norm = 0.0;                // H^{-s}_Omega norm of b
  std::array<double, 3> ratio{};
};

inline RemainderRatios verify_remainder_estimate(const GridFunction& a, const GridFunction& b,
                                                 double s, const Modulus& omega,
                                                 const CutoffPair& cut = standard_cutoffs()) {
  if (!(s > 0.0 && s < 1.0)) throw std::invalid_argument("verify_remainder_estimate: s in (0,1)");
  RemainderRatios out;
  out.a_norm = holder_norm(a, omega);
  out.b_norm = dyadic_sobolev_norm(b, {-s, omega}, cut);
  if (!(out.a_norm > 0.0) || !(out.b_norm > 0.0)) {
    throw std::invalid_argument("verify_remainder_estimate: degenerate input (zero norm)");
  }
  std::array<double, 3> acc{0.0, 0.0, 0.0};
  for (int q = -1; q <= q_product_cap(a.grid()); ++q) {
    const auto d = decompose_product(a, b, q, cut);
    const double w = std::exp2(2.0 * (1.0 - s) * q);
    acc[0] += w * sq(d.r1.l2());
    acc[1] += w * sq(d.r2.l2());
    acc[2] += w * sq(d.r3.l2());
  }
  for (int i = 0; i < 3; ++i) {
    out.numerator[i] = std::sqrt(acc[i]);
    out.ratio[i] = out.numerator[i] / (out.a_norm * out.b_norm);
  }
  return out;
}

}  // namespace paley
