// Acceptance suite: every release gate runs here at desk scale
// (n = 1 at N = 1024, n = 2 at N = 256^2, 512 time panels), one pass/fail
// line per criterion. Exit code 0 only when all criteria hold.

#include <chrono>
#include <cstdarg>
#include <cstdio>
#include <fstream>
#include <random>

#include "one_mode_oracle.hpp"
#include "paley/carleman.hpp"
#include "paley/gridio.hpp"
#include "paley/report.hpp"

using namespace paley;

namespace {

int g_failures = 0;

struct Stopwatch {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }
};

void report(int id, const char* name, bool pass, const std::string& detail) {
  std::printf("[%s] %02d %-28s %s\n", pass ? "PASS" : "FAIL", id, name, detail.c_str());
  if (!pass) ++g_failures;
}

std::string fmt(const char* f, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

// 1. chi + sum phi_cut = 1 at 1e4 sampled radii, error <= 1e-12, < 1 s.
void criterion_partition() {
  Stopwatch sw;
  const auto& cut = standard_cutoffs();
  std::mt19937_64 eng(101);
  std::uniform_real_distribution<double> unif(0.0, 100.0);
  double worst = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const double r = unif(eng);
    double sum = cut.chi(r);
    for (int q = 0; q <= 12; ++q) sum += cut.phi_cut(std::exp2(-q) * r);
    worst = std::max(worst, std::abs(sum - 1.0));
  }
  const double secs = sw.seconds();
  report(1, "partition-of-unity", worst <= 1e-12 && secs < 1.0,
         fmt("max error %.2e, %.2f s", worst, secs));
}

// 2. Multiplier products vanish for |p-q| >= 2 (<= 1e-14); reconstruction to
// 1e-12 relative over 50 random fields in 1D and 2D.
void criterion_orthogonality() {
  const auto& cut = standard_cutoffs();
  double worst_prod = 0.0;
  std::mt19937_64 eng(202);
  std::uniform_real_distribution<double> unif(0.0, 400.0);
  for (int i = 0; i < 10000; ++i) {
    const double r = unif(eng);
    for (int q = 0; q <= 8; ++q) {
      for (int p = q + 2; p <= 10; ++p) {
        worst_prod =
            std::max(worst_prod, std::abs(cut.phi_cut(std::exp2(-q) * r) * cut.phi_cut(std::exp2(-p) * r)));
      }
    }
  }
  double worst_rec = 0.0;
  std::mt19937_64 seeds(203);
  for (const Grid& g : {Grid{1, 1024, kTwoPi}, Grid{2, 256, kTwoPi}}) {
    for (int t = 0; t < 50; ++t) {
      const auto u = random_band_limited(g, {.seed = seeds()});
      const auto back = reconstruct(decompose(u));
      worst_rec = std::max(worst_rec, l2_distance(back, u) / u.l2());
    }
  }
  report(2, "almost-orthogonality", worst_prod <= 1e-14 && worst_rec <= 1e-12,
         fmt("max multiplier product %.1e, max reconstruction residual %.2e", worst_prod, worst_rec));
}

// 3. Weight identity residual <= 1e-6 at all interior nodes for the three
// moduli; Phi = e^tau - 1 closed form to 1e-9 for power(1); < 5 s.
void criterion_weight_ode() {
  Stopwatch sw;
  double worst_resid = 0.0, worst_closed = 0.0;
  bool ok = true;
  for (const auto& mu :
       {Modulus::power(1.0), Modulus::log_lipschitz(1.0), Modulus::log_lipschitz(0.5)}) {
    const auto wt = WeightTable::build(mu, 4.0);
    for (double tau : wt.tau_nodes()) {
      if (tau < 0.05 || tau > 4.0) continue;
      worst_resid = std::max(worst_resid, wt.ode_residual(tau));
    }
    if (mu.family() == ModulusFamily::power) {
      for (double tau : wt.tau_nodes()) {
        if (tau > 4.0) break;
        const double exact = std::expm1(tau);
        worst_closed = std::max(worst_closed, std::abs(wt.Phi(tau) - exact) / std::max(1.0, exact));
      }
    }
  }
  const double secs = sw.seconds();
  ok = worst_resid <= 1e-6 && worst_closed <= 1e-9 && secs < 5.0;
  report(3, "weight-ode", ok,
         fmt("max residual %.2e, closed-form gap %.2e, %.2f s", worst_resid, worst_closed, secs));
}

// 4. Osgood classification at k_max = 60.
void criterion_osgood() {
  bool ok = true;
  std::string detail;
  for (double a : {0.25, 0.5, 0.75, 1.0}) {
    const auto v = check_osgood(Modulus::power(a), 60).verdict;
    const bool want_pass = (a == 1.0);
    if ((v == Verdict::pass) != want_pass || v == Verdict::inconclusive) {
      ok = false;
      detail += fmt("power(%.2f)=%s ", a, to_string(v));
    }
  }
  for (double a : {0.5, 1.0}) {
    if (check_osgood(Modulus::log_lipschitz(a), 60).verdict != Verdict::pass) {
      ok = false;
      detail += fmt("loglip(%.1f) not pass ", a);
    }
  }
  if (check_osgood(Modulus::log_lipschitz(2.0), 60).verdict != Verdict::fail) {
    ok = false;
    detail += "loglip(2) not fail ";
  }
  report(4, "osgood-classification", ok, ok ? "all verdicts as mandated" : detail);
}

// 5. Bernstein block ratios within [3/4 - 1e-6, 8/3 + 1e-6] over 50 random u.
void criterion_bernstein() {
  const Grid g{1, 1024, kTwoPi};
  double lo = 1e300, hi = 0.0;
  bool ok = true;
  std::mt19937_64 seeds(505);
  for (int t = 0; t < 50; ++t) {
    const auto u = random_band_limited(g, {.seed = seeds()});
    for (int q = -1; q <= q_certified(g); ++q) {
      const auto s = verify_bernstein(u, q);
      if (s.skipped) continue;
      if (q == -1) {
        // Upper bound only: |xi| <= 4/3 means the scaled ratio <= 8/3.
        if (s.block_ratio_l2 > 8.0 / 3.0 + 1e-6) ok = false;
        continue;
      }
      lo = std::min(lo, s.block_ratio_l2);
      hi = std::max(hi, s.block_ratio_l2);
      if (s.block_ratio_l2 < 0.75 - 1e-6 || s.block_ratio_l2 > 8.0 / 3.0 + 1e-6) ok = false;
    }
  }
  report(5, "bernstein-ratios", ok, fmt("observed range [%.4f, %.4f]", lo, hi));
}

// 6. Commutator constant varies < 2x under N doubling 512 -> 1024.
void criterion_commutator() {
  std::mt19937_64 seeds(606);
  double c512 = 0.0, c1024 = 0.0;
  const Grid lo{1, 512, kTwoPi}, hi{1, 1024, kTwoPi};
  for (int t = 0; t < 20; ++t) {
    FieldSpec fa{.seed = seeds(), .xi_cut = 24.0};
    FieldSpec fu{.seed = seeds(), .xi_cut = 24.0};
    c512 = std::max(c512, commutator_report(random_band_limited(lo, fa),
                                            random_band_limited(lo, fu), 0, 5)
                              .max_ratio);
    c1024 = std::max(c1024, commutator_report(random_band_limited(hi, fa),
                                              random_band_limited(hi, fu), 0, 5)
                                .max_ratio);
  }
  const double var = std::max(c512, c1024) / std::min(c512, c1024);
  report(6, "commutator-stability", var < 2.0,
         fmt("constants %.4f @512 vs %.4f @1024 (x%.3f)", c512, c1024, var));
}

// 7. Product decomposition: 50 random triples reconstruct to 1e-10 with
// out-of-ball mass <= 1e-12; constant-a pieces vanish to 1e-12 for q >= 3.
void criterion_product_decomposition() {
  const Grid g{1, 1024, kTwoPi};
  std::mt19937_64 seeds(707);
  double worst_resid = 0.0, worst_mass = 0.0;
  std::uniform_int_distribution<int> pick_q(-1, q_product_cap(g));
  for (int t = 0; t < 50; ++t) {
    const auto a = random_band_limited(g, {.seed = seeds()});
    const auto b = random_band_limited(g, {.seed = seeds()});
    const auto d = decompose_product(a, b, pick_q(seeds));
    worst_resid = std::max(worst_resid, d.reconstruction_residual);
    worst_mass = std::max(worst_mass, d.out_of_ball_mass);
  }
  const auto ones = GridFunction::from_samples(g, std::vector<cplx>(g.size(), cplx{1.5, 0.0}), true);
  const auto b = random_band_limited(g, {.seed = 7070});
  double worst_const = 0.0;
  for (int q = 3; q <= q_product_cap(g); ++q) {
    const auto d = decompose_product(ones, b, q);
    worst_const = std::max({worst_const, d.r1.l2(), d.r2.l2(), d.r3.l2()});
  }
  const bool ok = worst_resid <= 1e-10 && worst_mass <= 1e-12 && worst_const <= 1e-12;
  report(7, "product-decomposition", ok,
         fmt("residual %.1e, out-of-ball %.1e, constant-a pieces %.1e", worst_resid, worst_mass,
             worst_const));
}

// 8. Remainder-estimate ratios finite and < 2x across N in {256, 512, 1024}.
void criterion_remainder_estimate() {
  struct Cfg {
    double s;
    Modulus omega;
    const char* name;
  };
  const Cfg cfgs[] = {{0.5, Modulus::power(1.0), "(1/2, power(1))"},
                      {0.5, Modulus::log_lipschitz(1.0).derived_omega(), "(1/2, omega-of-loglip(1))"},
                      {0.25, Modulus::power(0.75), "(1/4, power(3/4))"}};
  bool ok = true;
  std::string detail;
  for (const auto& cfg : cfgs) {
    std::array<double, 3> lo{1e300, 1e300, 1e300}, hi{0.0, 0.0, 0.0};
    for (int n : {256, 512, 1024}) {
      const Grid g{1, n, kTwoPi};
      std::array<double, 3> worst{0.0, 0.0, 0.0};
      for (int t = 0; t < 8; ++t) {
        FieldSpec fa{.seed = 808 + 2 * std::uint64_t(t), .xi_cut = 24.0, .omega_profile = &cfg.omega};
        FieldSpec fb{.seed = 809 + 2 * std::uint64_t(t), .xi_cut = 24.0};
        const auto r = verify_remainder_estimate(random_band_limited(g, fa),
                                                 random_band_limited(g, fb), cfg.s, cfg.omega);
        for (int i = 0; i < 3; ++i) worst[i] = std::max(worst[i], r.ratio[i]);
      }
      for (int i = 0; i < 3; ++i) {
        if (!std::isfinite(worst[i])) ok = false;
        lo[i] = std::min(lo[i], worst[i]);
        hi[i] = std::max(hi[i], worst[i]);
      }
    }
    for (int i = 0; i < 3; ++i) {
      if (hi[i] / lo[i] >= 2.0) {
        ok = false;
        detail += fmt("%s i=%d x%.2f ", cfg.name, i + 1, hi[i] / lo[i]);
      }
    }
  }
  report(8, "remainder-estimate", ok, ok ? "all ratios finite, < 2x across N" : detail);
}

// 9. Mollifier sup ratios uniform (< 2x) over eps in {2^-2 .. 2^-6}.
void criterion_mollifier() {
  const Grid g{1, 16, kTwoPi};
  const auto mu = Modulus::power(0.5);
  const int m = 4097;
  const auto w = lacunary_series(mu, 9, m, 909);
  TimeAxis axis{1.0, m};
  std::vector<GridFunction> slices;
  for (int i = 0; i < m; ++i) {
    std::vector<cplx> s(g.size());
    for (int j = 0; j < g.n; ++j) {
      s[j] = (1.0 + 0.3 * std::cos(g.period * j / g.n)) * w[static_cast<std::size_t>(i)];
    }
    slices.push_back(GridFunction::from_samples(g, std::move(s), true));
  }
  const TimeGridFunction a(axis, std::move(slices));
  double d_lo = 1e300, d_hi = 0.0, v_lo = 1e300, v_hi = 0.0;
  for (int e = 2; e <= 6; ++e) {
    const auto r = mollifier_ratios(a, mu, std::exp2(-e));
    d_lo = std::min(d_lo, r.diff_over_mu);
    d_hi = std::max(d_hi, r.diff_over_mu);
    v_lo = std::min(v_lo, r.deriv_over_mu_eps);
    v_hi = std::max(v_hi, r.deriv_over_mu_eps);
  }
  const bool ok = d_hi / d_lo < 2.0 && v_hi / v_lo < 2.0;
  report(9, "mollifier-bounds", ok,
         fmt("diff ratio x%.3f, deriv ratio x%.3f", d_hi / d_lo, v_hi / v_lo));
}

// 10. Constant-coefficient single-mode sweep matches the scalar oracle to
// 1e-6 on lhs and rhs for gamma in {1, 4, 16}; < 30 s.
void criterion_one_mode_oracle() {
  Stopwatch sw;
  const Grid g{1, 1024, kTwoPi};
  const double T = 0.5, s = 0.5;
  const int k = 8;
  const auto mu = Modulus::power(1.0);
  CarlemanConfig cfg;
  cfg.s = s;
  cfg.mu = mu;
  cfg.gammas = {1.0, 4.0, 16.0};
  cfg.weight = std::make_shared<WeightTable>(WeightTable::build(mu, 16.0 * T * 1.05));
  TimeAxis axis{T, 2049};
  cfg.v = bump_mode_field(g, axis, k);
  const auto coeffs = identity_coefficients(g, axis, mu, cfg.omega());
  const auto rep = evaluate_carleman(cfg, coeffs, false);
  double worst = 0.0;
  const auto omega = cfg.omega();
  for (const auto& r : rep.sweep) {
    const auto ref = oracle::evaluate(k, s, T, g.period, r.gamma, omega);
    worst = std::max({worst, std::abs(r.lhs / ref.lhs - 1.0), std::abs(r.rhs_grad / ref.rhs_grad - 1.0),
                      std::abs(r.rhs_l2 / ref.rhs_l2 - 1.0)});
  }
  const double secs = sw.seconds();
  report(10, "one-mode-oracle", worst <= 1e-6 && secs < 30.0,
         fmt("max relative gap %.2e, %.2f s", worst, secs));
}

// 11. Headline run: variable coefficients with log-lipschitz time regularity;
// ratio >= 1e-3 and non-decreasing from the empirical gamma0; report emitted;
// < 10 min.
void criterion_headline() {
  Stopwatch sw;
  const Grid g{1, 1024, kTwoPi};
  const double T = 1.0 / 256.0;
  const auto mu = Modulus::log_lipschitz(1.0);
  CarlemanConfig cfg;
  cfg.s = 0.5;
  cfg.mu = mu;
  for (int j = 0; j <= 10; ++j) cfg.gammas.push_back(std::exp2(j));
  cfg.weight = std::make_shared<WeightTable>(WeightTable::build(mu, 1024.0 * T * 1.05));
  TimeAxis axis{T, 513};
  cfg.v = bump_mode_field(g, axis, 8);
  const auto w = lacunary_series(mu, 6, 513, 11);
  const auto coeffs = sinusoidal_coefficients(g, axis, 0.5, 1, w, mu, cfg.omega());
  const auto rep = evaluate_carleman(cfg, coeffs, true);

  bool ok = rep.gamma0_found && !rep.degenerate;
  bool monotone = true;
  double prev = 0.0;
  bool seen = false;
  for (const auto& r : rep.sweep) {
    if (r.gamma < rep.gamma0) continue;
    if (r.ratio < 1e-3) ok = false;
    if (seen && r.ratio < prev * (1.0 - 1e-9)) monotone = false;
    prev = r.ratio;
    seen = true;
  }
  // Emit the report next to the test binary.
  const json payload = to_json(rep);
  std::ofstream os("acceptance_headline_report.json");
  os << payload.dump(1) << "\n";
  std::ofstream csv("acceptance_headline_sweep.csv");
  csv.precision(16);
  csv << "gamma,lhs,rhs_grad,rhs_l2,ratio\n";
  for (const auto& r : rep.sweep) {
    csv << r.gamma << "," << r.lhs << "," << r.rhs_grad << "," << r.rhs_l2 << "," << r.ratio << "\n";
  }
  const double secs = sw.seconds();
  ok = ok && monotone && secs < 600.0;
  report(11, "carleman-headline", ok,
         fmt("gamma0 = %g, C = %.3g, a0 = %.3f, %.1f s", rep.gamma0, rep.constant, rep.coeff_a0, secs));
}

// 12. Conjugation identity to 1e-8 at three gamma values.
void criterion_conjugation() {
  const Grid g{1, 256, kTwoPi};
  const double T = 0.5;
  const auto mu = Modulus::power(1.0);
  TimeAxis axis{T, 4097};
  const auto v = bump_mode_field(g, axis, 8);
  std::vector<double> w(4097);
  for (int i = 0; i < 4097; ++i) w[i] = std::sin(kTwoPi * i / 4096.0);
  const auto coeffs = sinusoidal_coefficients(g, axis, 0.25, 1, w, mu, mu.derived_omega());
  double worst = 0.0;
  for (double gamma : {1.0, 2.0, 4.0}) {
    worst = std::max(worst, conjugation_residual(
                                coeffs, v, gamma, [](double tau) { return std::expm1(tau); },
                                [](double tau) { return std::exp(tau); }));
  }
  report(12, "conjugation-identity", worst <= 1e-8, fmt("max relative residual %.2e", worst));
}

}  // namespace

int main() {
  std::printf("paley acceptance suite\n");
  criterion_partition();
  criterion_orthogonality();
  criterion_weight_ode();
  criterion_osgood();
  criterion_bernstein();
  criterion_commutator();
  criterion_product_decomposition();
  criterion_remainder_estimate();
  criterion_mollifier();
  criterion_one_mode_oracle();
  criterion_headline();
  criterion_conjugation();
  std::printf("%d of 12 criteria passed\n", 12 - g_failures);
  return g_failures == 0 ? 0 : 1;
}
