#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "paley/paraproduct.hpp"
#include "paley/synth.hpp"

using namespace paley;

namespace {
const Grid g1{1, 512, kTwoPi};

GridFunction constant_field(const Grid& g, double v) {
  return GridFunction::from_samples(g, std::vector<cplx>(g.size(), cplx{v, 0.0}), true);
}
}  // namespace

TEST_CASE("dealiased product equals the exact product of band-limited data") {
  // Two single modes: product is a single mode, representable exactly.
  const auto a = fourier_mode(g1, 7);
  const auto b = fourier_mode(g1, 9);
  const auto p = dealiased_product(a, b);
  CHECK(l2_distance(p, fourier_mode(g1, 16)) < 1e-13);
}

TEST_CASE("paraproduct basics") {
  SECTION("constant second factor gives zero") {
    const auto a = random_band_limited(g1, {.seed = 1});
    const auto b = constant_field(g1, 3.0);
    CHECK(paraproduct(a, b).l2() < 1e-13);
  }
  SECTION("T_1 b strips the two lowest blocks") {
    const auto one = constant_field(g1, 1.0);
    const auto b = random_band_limited(g1, {.seed = 2});
    const auto lhs = paraproduct(one, b);
    auto rhs = axpy(1.0, b, -1.0, delta_q(b, -1));
    rhs = axpy(1.0, rhs, -1.0, delta_q(b, 0));
    CHECK(l2_distance(lhs, rhs) < 1e-12 * b.l2());
  }
  SECTION("H^s boundedness with measured constants") {
    std::mt19937_64 seeds(3);
    for (double s : {-0.5, 0.0, 0.5}) {
      double worst = 0.0;
      for (int t = 0; t < 20; ++t) {
        // Band-limit so the paraproduct itself stays resolved.
        const auto a = random_band_limited(g1, {.seed = seeds(), .xi_cut = 48.0});
        const auto b = random_band_limited(g1, {.seed = seeds(), .xi_cut = 48.0});
        const double num = dyadic_sobolev_norm(paraproduct(a, b), {s, std::nullopt});
        const double den = a.linf() * dyadic_sobolev_norm(b, {s, std::nullopt});
        worst = std::max(worst, num / den);
      }
      INFO("s = " << s << " measured constant " << worst);
      CHECK(worst < 10.0);
      CHECK(worst > 0.0);
    }
  }
}

TEST_CASE("product decompositions reproduce ab") {
  std::mt19937_64 seeds(5);
  for (int trial = 0; trial < 5; ++trial) {
    const auto a = random_band_limited(g1, {.seed = seeds()});
    const auto b = random_band_limited(g1, {.seed = seeds()});
    const auto ab = dealiased_product(a, b);
    SECTION("T_a b + T_b a + R(a,b) = ab, trial " + std::to_string(trial)) {
      auto sum = axpy(1.0, paraproduct(a, b), 1.0, paraproduct(b, a));
      sum = axpy(1.0, sum, 1.0, remainder(a, b));
      CHECK(l2_distance(sum, ab) < 1e-10 * ab.l2());
    }
    SECTION("T_a b + tilde R(a,b) = ab, trial " + std::to_string(trial)) {
      const auto sum = axpy(1.0, paraproduct(a, b), 1.0, tilde_remainder(a, b));
      CHECK(l2_distance(sum, ab) < 1e-10 * ab.l2());
    }
    SECTION("tilde R = T_b a + R(a,b), trial " + std::to_string(trial)) {
      const auto rhs = axpy(1.0, paraproduct(b, a), 1.0, remainder(a, b));
      CHECK(l2_distance(tilde_remainder(a, b), rhs) < 1e-10 * ab.l2());
    }
  }
}

TEST_CASE("remainder special cases") {
  const auto b = random_band_limited(g1, {.seed = 7});
  SECTION("zero argument") {
    CHECK(remainder(b, GridFunction::zero(g1)).l2() == 0.0);
    CHECK(tilde_remainder(GridFunction::zero(g1), b).l2() == 0.0);
  }
  SECTION("constant first argument couples only to the lowest blocks") {
    const auto a = constant_field(g1, 2.0);
    const auto expect = scaled(axpy(1.0, delta_q(b, -1), 1.0, delta_q(b, 0)), 2.0);
    CHECK(l2_distance(remainder(a, b), expect) < 1e-12 * b.l2());
  }
  SECTION("constant a: tilde R = a S_1 b") {
    const auto a = constant_field(g1, 2.0);
    const auto expect = scaled(s_q(b, 1), 2.0);
    CHECK(l2_distance(tilde_remainder(a, b), expect) < 1e-12 * b.l2());
  }
}

TEST_CASE("bilinearity of the paraproduct calculus") {
  const auto a1 = random_band_limited(g1, {.seed = 11});
  const auto a2 = random_band_limited(g1, {.seed = 12});
  const auto b = random_band_limited(g1, {.seed = 13});
  const double al = 1.7, be = -0.4;
  const auto amix = axpy(al, a1, be, a2);
  using Op = GridFunction (*)(const GridFunction&, const GridFunction&, const CutoffPair&);
  for (Op op : {static_cast<Op>(paraproduct), static_cast<Op>(remainder),
                static_cast<Op>(tilde_remainder)}) {
    const auto lhs = op(amix, b, standard_cutoffs());
    const auto rhs = axpy(al, op(a1, b, standard_cutoffs()), be, op(a2, b, standard_cutoffs()));
    CHECK(l2_distance(lhs, rhs) < 1e-12 * std::max(1.0, lhs.l2()));
  }
}

TEST_CASE("support vanishing rules") {
  const auto a = random_band_limited(g1, {.seed = 21});
  const auto b = random_band_limited(g1, {.seed = 22});
  SECTION("Delta_q(S_{q'-1}a Delta_{q'}b) = 0 for |q'-q| >= 5") {
    for (int q : {0, 2, 4}) {
      for (int qp : {q + 5, q + 6}) {
        if (qp > q_complete(g1)) continue;
        const auto term = delta_q(dealiased_product(s_q(a, qp - 1), delta_q(b, qp)), q);
        CHECK(term.l2() < 1e-13);
      }
      if (q - 5 >= -1) {
        const auto term = delta_q(dealiased_product(s_q(a, q - 6), delta_q(b, q - 5)), q);
        CHECK(term.l2() < 1e-13);
      }
    }
  }
  SECTION("Delta_q(S_{q'+2}a Delta_{q'}b) = 0 for q' <= q - 4") {
    for (int q : {3, 5}) {
      for (int qp = -1; qp <= q - 4; ++qp) {
        const auto term = delta_q(dealiased_product(s_q(a, qp + 2), delta_q(b, qp)), q);
        CHECK(term.l2() < 1e-13);
      }
    }
  }
}

TEST_CASE("decompose_product") {
  SECTION("constant a for q >= 3 leaves only the main term") {
    const auto a = constant_field(g1, 1.5);
    const auto b = random_band_limited(g1, {.seed = 31});
    for (int q : {3, 4, 5}) {
      const auto d = decompose_product(a, b, q);
      CHECK(d.r1.l2() < 1e-12);
      CHECK(d.r2.l2() < 1e-12);
      CHECK(d.r3.l2() < 1e-12);
      CHECK(l2_distance(d.main, scaled(delta_q(b, q), 1.5)) < 1e-12 * b.l2());
    }
  }
  SECTION("random pairs reconstruct with certified support") {
    std::mt19937_64 seeds(33);
    std::uniform_int_distribution<int> pick_q(-1, q_product_cap(g1));
    for (int trial = 0; trial < 15; ++trial) {
      const auto a = random_band_limited(g1, {.seed = seeds()});
      const auto b = random_band_limited(g1, {.seed = seeds()});
      const int q = pick_q(seeds);
      const auto d = decompose_product(a, b, q);
      CHECK(d.reconstruction_residual <= 1e-10);
      CHECK(d.out_of_ball_mass <= 1e-12);
    }
  }
  SECTION("margin violation is rejected") {
    const auto a = random_band_limited(g1, {.seed = 35});
    const auto b = random_band_limited(g1, {.seed = 36});
    CHECK_THROWS_AS(decompose_product(a, b, q_product_cap(g1) + 1), std::invalid_argument);
  }
}

TEST_CASE("remainder estimate ratios") {
  const auto omega = Modulus::log_lipschitz(1.0).derived_omega();
  const Grid g{1, 256, kTwoPi};
  SECTION("scaling invariance in a") {
    const auto a = random_band_limited(g, {.seed = 41, .omega_profile = &omega});
    const auto b = random_band_limited(g, {.seed = 42});
    const auto r1 = verify_remainder_estimate(a, b, 0.5, omega);
    const auto r2 = verify_remainder_estimate(scaled(a, 2.0), b, 0.5, omega);
    for (int i = 0; i < 3; ++i) {
      if (r1.ratio[i] == 0.0) continue;
      CHECK(std::abs(r2.ratio[i] / r1.ratio[i] - 1.0) < 1e-10);
    }
  }
  SECTION("ratios bounded over random pairs") {
    std::mt19937_64 seeds(43);
    std::array<double, 3> worst{0.0, 0.0, 0.0};
    for (int trial = 0; trial < 50; ++trial) {
      const auto a = random_band_limited(g, {.seed = seeds(), .omega_profile = &omega});
      const auto b = random_band_limited(g, {.seed = seeds()});
      const auto r = verify_remainder_estimate(a, b, 0.5, omega);
      for (int i = 0; i < 3; ++i) worst[i] = std::max(worst[i], r.ratio[i]);
    }
    INFO("measured C_{s,i}: " << worst[0] << " " << worst[1] << " " << worst[2]);
    for (int i = 0; i < 3; ++i) {
      CHECK(worst[i] > 0.0);
      CHECK(worst[i] < 50.0);
    }
  }
  SECTION("degenerate inputs are rejected") {
    const auto b = random_band_limited(g, {.seed = 44});
    CHECK_THROWS_AS(verify_remainder_estimate(GridFunction::zero(g), b, 0.5, omega),
                    std::invalid_argument);
  }
  SECTION("stability under refinement (same function, two grids)") {
    const Grid g512{1, 512, kTwoPi};
    FieldSpec fa{.seed = 45, .xi_cut = 24.0, .omega_profile = &omega};
    FieldSpec fb{.seed = 46, .xi_cut = 24.0};
    const auto r_lo = verify_remainder_estimate(random_band_limited(g, fa),
                                                random_band_limited(g, fb), 0.5, omega);
    const auto r_hi = verify_remainder_estimate(random_band_limited(g512, fa),
                                                random_band_limited(g512, fb), 0.5, omega);
    for (int i = 0; i < 3; ++i) {
      INFO("i = " << i + 1 << ": " << r_lo.ratio[i] << " vs " << r_hi.ratio[i]);
      const double lo = std::min(r_lo.ratio[i], r_hi.ratio[i]);
      const double hi = std::max(r_lo.ratio[i], r_hi.ratio[i]);
      CHECK(hi / lo < 2.0);
    }
  }
}

TEST_CASE("summing the per-block decompositions over q rebuilds ab") {
  const Grid g{1, 256, kTwoPi};
  // Band-limit low enough that every block of ab sits below the product cap.
  FieldSpec fa{.seed = 51, .xi_cut = 12.0};
  FieldSpec fb{.seed = 52, .xi_cut = 12.0};
  const auto a = random_band_limited(g, fa);
  const auto b = random_band_limited(g, fb);
  const auto ab = dealiased_product(a, b);
  auto acc = GridFunction::zero(g);
  for (int q = -1; q <= q_product_cap(g); ++q) {
    const auto d = decompose_product(a, b, q);
    acc = axpy(1.0, acc, 1.0, axpy(1.0, axpy(1.0, d.main, 1.0, d.r1), 1.0, axpy(1.0, d.r2, 1.0, d.r3)));
  }
  CHECK(l2_distance(acc, ab) < 1e-10 * ab.l2());
}
