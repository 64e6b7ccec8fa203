#pragma once
// Littlewood-Paley analysis on periodic grids: dyadic blocks via Fourier
// multipliers, low-pass partial sums, dyadic (weighted) Sobolev norms, the
// synthesis bound, and the block characterization of C^omega regularity.

#include <optional>
#include <utility>
#include <vector>

#include "paley/cutoffs.hpp"
#include "paley/grid.hpp"
#include "paley/modulus.hpp"

namespace paley {

/// Largest q whose annulus [3/4 2^q, 8/3 2^q] sits inside the per-axis Nyquist
/// ball: blocks up to here carry a clean support certificate.
inline int q_certified(const Grid& g) {
  int q = -1;
  while ((8.0 / 3.0) * std::exp2(q + 1) <= g.nyquist()) ++q;
  return q;
}

/// Smallest Q such that blocks -1..Q reproduce every grid frequency
/// (chi(2^{-(Q+1)} xi) = 1 for all lattice xi, corner modes included).
inline int q_complete(const Grid& g) {
  const double xi_max = g.nyquist() * (g.dim == 2 ? std::sqrt(2.0) : 1.0);
  int q = -1;
  while (std::exp2(-(q + 1)) * xi_max > 0.75) ++q;
  return q;
}

/// Fraction of spectral energy in the top two dyadic blocks.
inline double top_block_energy_fraction(const GridFunction& u,
                                        const CutoffPair& cut = standard_cutoffs()) {
  const int qc = q_complete(u.grid());
  double top = 0.0, total = 0.0;
  for (std::size_t i = 0; i < u.spectrum().size(); ++i) {
    const double e = std::norm(u.spectrum()[i]);
    total += e;
    const double r = xi_abs(u.grid(), i);
    for (int q = std::max(0, qc - 1); q <= qc; ++q) {
      top += e * sq(cut.phi_cut(std::exp2(-q) * r));
    }
  }
  return total == 0.0 ? 0.0 : top / total;
}

inline constexpr double kResolvedTol = 1e-8;

inline bool resolved(const GridFunction& u, double tol = kResolvedTol) {
  return top_block_energy_fraction(u) <= tol;
}

inline void assert_resolved(const GridFunction& u, const char* op) {
  const double f = top_block_energy_fraction(u);
  if (f > kResolvedTol) {
    throw std::runtime_error(std::string(op) +
                             ": input not resolved (top-two-block energy fraction " +
                             std::to_string(f) + " > 1e-8)");
  }
}

/// Dyadic block Delta_q u. Zero for q <= -2; chi(D) for q = -1.
inline GridFunction delta_q(const GridFunction& u, int q,
                            const CutoffPair& cut = standard_cutoffs()) {
  if (q <= -2) return GridFunction::zero(u.grid());
  if (q > q_complete(u.grid())) {
    throw std::invalid_argument(
        "delta_q: q = " + std::to_string(q) +
        " beyond the Nyquist-supported range (resolvedness certifies the top blocks empty)");
  }
  const Grid g = u.grid();
  if (q == -1) return u.filtered([&](std::size_t i) { return cut.chi(xi_abs(g, i)); }, true);
  const double s = std::exp2(-q);
  return u.filtered([&](std::size_t i) { return cut.phi_cut(s * xi_abs(g, i)); }, true);
}

/// Low-pass S_q u = chi(2^-q D) u for q >= 0; zero for q < 0.
inline GridFunction s_q(const GridFunction& u, int q,
                        const CutoffPair& cut = standard_cutoffs()) {
  if (q < 0) return GridFunction::zero(u.grid());
  const Grid g = u.grid();
  const double s = std::exp2(-q);
  return u.filtered([&](std::size_t i) { return cut.chi(s * xi_abs(g, i)); }, true);
}

/// ||Delta_q u||_{L2} straight from the spectrum (no inverse transform).
inline double block_l2(const GridFunction& u, int q,
                       const CutoffPair& cut = standard_cutoffs()) {
  if (q <= -2) return 0.0;
  const Grid& g = u.grid();
  const double s = std::exp2(-q);
  double acc = 0.0;
  for (std::size_t i = 0; i < u.spectrum().size(); ++i) {
    const double r = xi_abs(g, i);
    const double m = (q == -1) ? cut.chi(r) : cut.phi_cut(s * r);
    if (m != 0.0) acc += sq(m) * std::norm(u.spectrum()[i]);
  }
  return std::sqrt(acc * u.measure());
}

struct DyadicBlock {
  int q = 0;
  GridFunction values;
  double out_of_annulus_mass = 0.0;  // support certificate
};

struct DyadicDecomposition {
  Grid grid;
  std::vector<DyadicBlock> blocks;  // q = -1 .. q_complete
};

inline std::pair<double, double> block_annulus(int q) {
  if (q == -1) return {0.0, 4.0 / 3.0};
  return {0.75 * std::exp2(q), (8.0 / 3.0) * std::exp2(q)};
}

inline DyadicDecomposition decompose(const GridFunction& u,
                                     const CutoffPair& cut = standard_cutoffs()) {
  assert_resolved(u, "decompose");
  DyadicDecomposition d;
  d.grid = u.grid();
  for (int q = -1; q <= q_complete(u.grid()); ++q) {
    DyadicBlock b;
    b.q = q;
    b.values = delta_q(u, q, cut);
    const auto [lo, hi] = block_annulus(q);
    double outside = b.values.mass_outside(hi);
    if (q >= 0) {
      for (std::size_t i = 0; i < b.values.spectrum().size(); ++i) {
        if (xi_abs(u.grid(), i) < lo) outside += std::norm(b.values.spectrum()[i]) * u.measure();
      }
    }
    b.out_of_annulus_mass = outside;
    d.blocks.push_back(std::move(b));
  }
  return d;
}

inline GridFunction reconstruct(const DyadicDecomposition& d) {
  std::vector<cplx> c(d.grid.size(), cplx{0.0, 0.0});
  bool real = true;
  for (const auto& b : d.blocks) {
    real = real && b.values.declared_real();
    for (std::size_t i = 0; i < c.size(); ++i) c[i] += b.values.spectrum()[i];
  }
  return GridFunction::from_spectrum(d.grid, std::move(c), real);
}

// ---------------------------------------------------------------------------
// Dyadic Sobolev norms.
// ---------------------------------------------------------------------------

struct SobolevSpec {
  double s = 0.0;
  std::optional<Modulus> omega;  // per-block weight Omega(q) = 2^q omega(2^-q)
};

inline double dyadic_weight(const SobolevSpec& spec, int q) {
  if (!spec.omega) return 1.0;
  return std::exp2(q) * spec.omega->extended(std::exp2(-q));
}

inline double dyadic_sobolev_norm(const GridFunction& u, const SobolevSpec& spec,
                                  const CutoffPair& cut = standard_cutoffs()) {
  assert_resolved(u, "dyadic_sobolev_norm");
  double acc = 0.0;
  for (int q = -1; q <= q_complete(u.grid()); ++q) {
    const double w = dyadic_weight(spec, q);
    acc += std::exp2(2.0 * spec.s * q) * w * w * sq(block_l2(u, q, cut));
  }
  return std::sqrt(acc);
}

/// Multiplier-side H^s norm (1 + |xi|^2)^{s/2}; cross-check channel only.
inline double multiplier_sobolev_norm(const GridFunction& u, double s) {
  double acc = 0.0;
  for (std::size_t i = 0; i < u.spectrum().size(); ++i) {
    const double r = xi_abs(u.grid(), i);
    acc += std::pow(1.0 + r * r, s) * std::norm(u.spectrum()[i]);
  }
  return std::sqrt(acc * u.measure());
}

// ---------------------------------------------------------------------------
// Synthesis bound: blocks with dyadic spectral support determine the H^s norm
// of their sum up to a constant.
// ---------------------------------------------------------------------------

struct SynthesisReport {
  double sum_norm = 0.0;
  double sequence_norm = 0.0;
  double ratio = 0.0;
  bool pass = false;
  int offending_block = -2;  // q of the first support violation, or -2
};

inline SynthesisReport synthesis_norm_bound(const std::vector<std::pair<int, GridFunction>>& blocks,
                                            double s, double R, double c_s = 3.0,
                                            const CutoffPair& cut = standard_cutoffs()) {
  if (blocks.empty()) throw std::invalid_argument("synthesis_norm_bound: no blocks");
  if (!(R > 1.0)) throw std::invalid_argument("synthesis_norm_bound: R > 1");
  SynthesisReport rep;
  const Grid g = blocks.front().second.grid();
  const double support_tol = 1e-12;
  for (const auto& [q, b] : blocks) {
    double bad = 0.0;
    const double total = sq(b.l2());
    if (s > 0.0) {
      bad = b.mass_outside(R * std::exp2(q));  // relaxed ball condition
    } else if (q == -1) {
      bad = b.mass_outside(R);
    } else {
      bad = b.mass_outside(2.0 * R * std::exp2(q));
      for (std::size_t i = 0; i < b.spectrum().size(); ++i) {
        if (xi_abs(g, i) < std::exp2(q) / R) bad += std::norm(b.spectrum()[i]) * b.measure();
      }
    }
    if (total > 0.0 && bad > support_tol * total) {
      rep.offending_block = q;
      throw std::invalid_argument("synthesis_norm_bound: block q = " + std::to_string(q) +
                                  " violates its spectral support condition");
    }
  }
  std::vector<cplx> c(g.size(), cplx{0.0, 0.0});
  for (const auto& [q, b] : blocks) {
    for (std::size_t i = 0; i < c.size(); ++i) c[i] += b.spectrum()[i];
  }
  const auto sum = GridFunction::from_spectrum(g, std::move(c), false);
  rep.sum_norm = dyadic_sobolev_norm(sum, {s, std::nullopt}, cut);
  double seq = 0.0;
  for (const auto& [q, b] : blocks) seq += std::exp2(2.0 * s * q) * sq(b.l2());
  rep.sequence_norm = std::sqrt(seq);
  rep.ratio = rep.sequence_norm > 0.0 ? rep.sum_norm / rep.sequence_norm : 0.0;
  rep.pass = rep.ratio <= c_s && rep.ratio >= 1.0 / c_s;
  return rep;
}

// ---------------------------------------------------------------------------
// Spectral gradients and the block characterization of C^omega.
// ---------------------------------------------------------------------------

inline GridFunction gradient_component(const GridFunction& u, int axis) {
  const Grid g = u.grid();
  std::vector<cplx> c(u.spectrum().size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    c[i] = cplx{0.0, xi_component(g, i, axis)} * u.spectrum()[i];
  }
  return GridFunction::from_spectrum(g, std::move(c), u.declared_real());
}

/// max_x |grad u(x)| (euclidean norm across axes).
inline double gradient_linf(const GridFunction& u) {
  const int dim = u.grid().dim;
  std::vector<GridFunction> parts;
  for (int a = 0; a < dim; ++a) parts.push_back(gradient_component(u, a));
  double m = 0.0;
  for (std::size_t i = 0; i < u.samples().size(); ++i) {
    double v = 0.0;
    for (const auto& p : parts) v += std::norm(p.samples()[i]);
    m = std::max(m, std::sqrt(v));
  }
  return m;
}

/// L2 norm of the full gradient.
inline double gradient_l2(const GridFunction& u) {
  double acc = 0.0;
  for (std::size_t i = 0; i < u.spectrum().size(); ++i) {
    acc += sq(xi_abs(u.grid(), i)) * std::norm(u.spectrum()[i]);
  }
  return std::sqrt(acc * u.measure());
}

/// sup_{q >= 0} ||grad S_q u||_inf / (2^q omega(2^-q)). Characterizes the
/// C^omega norm (up to constants) when omega satisfies the Dini condition.
inline double holder_block_norm(const GridFunction& u, const Modulus& omega,
                                const CutoffPair& cut = standard_cutoffs()) {
  assert_resolved(u, "holder_block_norm");
  double worst = 0.0;
  for (int q = 0; q <= q_complete(u.grid()) + 1; ++q) {
    const double denom = std::exp2(q) * omega(std::exp2(-q));
    worst = std::max(worst, gradient_linf(s_q(u, q, cut)) / denom);
  }
  return worst;
}

}  // namespace paley
