#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "paley/holder.hpp"
#include "paley/lp.hpp"
#include "paley/synth.hpp"

using namespace paley;

namespace {
const Grid g1{1, 1024, kTwoPi};
const Grid g2{2, 256, kTwoPi};
}  // namespace

TEST_CASE("cutoff profiles") {
  const auto& cut = standard_cutoffs();
  CHECK(cut.chi(0.0) == 1.0);
  CHECK(cut.chi(0.75) == 1.0);
  CHECK(cut.chi(4.0 / 3.0) == 0.0);
  CHECK(cut.phi_cut(0.7) == 0.0);
  CHECK(cut.phi_cut(2.7) == 0.0);
  CHECK(cut.phi_cut(1.4) == 1.0);  // plateau between 4/3 and 3/2

  SECTION("values stay in [0,1] and chi decreases") {
    double prev = 1.0;
    for (double r = 0.0; r <= 3.0; r += 1e-3) {
      const double c = cut.chi(r);
      const double p = cut.phi_cut(r);
      CHECK(c >= 0.0);
      CHECK(c <= 1.0);
      CHECK(p >= -1e-15);
      CHECK(p <= 1.0 + 1e-15);
      CHECK(c <= prev + 1e-15);
      prev = c;
    }
  }

  SECTION("partition of unity at random radii is exact") {
    std::mt19937_64 eng(5);
    std::uniform_real_distribution<double> unif(0.0, 100.0);
    for (int i = 0; i < 200; ++i) {
      const double r = unif(eng);
      double sum = cut.chi(r);
      for (int q = 0; q <= 12; ++q) sum += cut.phi_cut(std::exp2(-q) * r);
      CHECK(std::abs(sum - 1.0) <= 1e-12);
    }
  }

  SECTION("annulus overlap vanishes for |p-q| >= 2") {
    std::mt19937_64 eng(6);
    std::uniform_real_distribution<double> unif(0.0, 400.0);
    for (int i = 0; i < 500; ++i) {
      const double r = unif(eng);
      for (int q = 0; q <= 8; ++q) {
        for (int p = q + 2; p <= 8; ++p) {
          CHECK(cut.phi_cut(std::exp2(-q) * r) * cut.phi_cut(std::exp2(-p) * r) == 0.0);
        }
      }
    }
  }

  SECTION("sharper transitions remain inside the mandated bounds") {
    const auto sharp = build_cutoffs(0.5);
    CHECK(sharp.chi(0.75) == 1.0);
    CHECK(sharp.chi(4.0 / 3.0) == 0.0);
    CHECK(sharp.transition_lo() > 0.75);
    CHECK(sharp.transition_hi() < 4.0 / 3.0);
  }
}

TEST_CASE("delta_q on modes and constants") {
  SECTION("mode in the plateau of its annulus") {
    // phi_cut(2^-q |k|) = 1 for |k| / 2^q in [4/3, 3/2]; take q = 3, k = 11.
    const auto u = fourier_mode(g1, 11);
    const auto b3 = delta_q(u, 3);
    CHECK(l2_distance(b3, u) < 1e-13 * u.l2());
    for (int p : {-1, 0, 1, 5, 6}) {
      CHECK(delta_q(u, p).l2() < 1e-14 * u.l2());
    }
  }
  SECTION("constants belong to the q = -1 block") {
    const auto c = GridFunction::from_samples(g1, std::vector<cplx>(g1.size(), cplx{2.5, 0.0}), true);
    CHECK(l2_distance(delta_q(c, -1), c) < 1e-13 * c.l2());
    for (int q = 0; q <= 4; ++q) CHECK(delta_q(c, q).l2() < 1e-14 * c.l2());
    CHECK(delta_q(c, -3).l2() == 0.0);
  }
  SECTION("q beyond the grid errors") {
    const auto u = random_band_limited(g1, {.seed = 3});
    CHECK_THROWS_AS(delta_q(u, q_complete(g1) + 1), std::invalid_argument);
  }
}

TEST_CASE("reconstruction and almost-orthogonality") {
  for (const Grid& g : {g1, g2}) {
    const auto u = random_band_limited(g, {.seed = 11});
    const auto d = decompose(u);
    const auto back = reconstruct(d);
    CHECK(l2_distance(back, u) <= 1e-12 * u.l2());
    for (const auto& b : d.blocks) {
      CHECK(b.out_of_annulus_mass <= 1e-12 * sq(u.l2()));
    }
    // Delta_q Delta_p u = 0 for |p-q| >= 2.
    for (int q = 0; q <= q_complete(g); ++q) {
      for (int p = q + 2; p <= q_complete(g); ++p) {
        CHECK(delta_q(delta_q(u, q), p).l2() <= 1e-14 * u.l2());
      }
    }
  }
}

TEST_CASE("low-pass identities") {
  const auto u = random_band_limited(g1, {.seed = 21});
  SECTION("S_q u = sum of blocks below") {
    for (int q : {0, 2, 5}) {
      auto acc = GridFunction::zero(g1);
      for (int p = -1; p <= q - 1; ++p) acc = axpy(1.0, acc, 1.0, delta_q(u, p));
      CHECK(l2_distance(s_q(u, q), acc) <= 1e-12 * u.l2());
    }
  }
  SECTION("fields inside the chi plateau pass through") {
    const auto m = fourier_mode(g1, 5);  // chi(2^-3 * 5) = chi(0.625) = 1
    CHECK(l2_distance(s_q(m, 3), m) < 1e-13 * m.l2());
  }
  SECTION("high modes are annihilated") {
    const auto m = fourier_mode(g1, 11);  // chi(2^-3 * 11) = chi(1.375) = 0
    CHECK(s_q(m, 3).l2() < 1e-14 * m.l2());
  }
}

TEST_CASE("dyadic Sobolev norm") {
  SECTION("zero function") {
    CHECK(dyadic_sobolev_norm(GridFunction::zero(g1), {0.5, std::nullopt}) == 0.0);
  }
  SECTION("single plateau mode at s = -1/2") {
    const auto u = fourier_mode(g1, 11);  // block q = 3 only
    const double n = dyadic_sobolev_norm(u, {-0.5, std::nullopt});
    CHECK(n == Catch::Approx(std::exp2(-1.5) * u.l2()).epsilon(1e-12));
  }
  SECTION("power(1) weight is the unweighted norm") {
    const auto u = random_band_limited(g1, {.seed = 31});
    const auto w = Modulus::power(1.0);
    const double a = dyadic_sobolev_norm(u, {-0.5, w});
    const double b = dyadic_sobolev_norm(u, {-0.5, std::nullopt});
    CHECK(a == Catch::Approx(b).epsilon(1e-13));
  }
  SECTION("multiplier norm is equivalent at s = -1/2") {
    const auto u = random_band_limited(g1, {.seed = 32});
    const double a = dyadic_sobolev_norm(u, {-0.5, std::nullopt});
    const double b = multiplier_sobolev_norm(u, -0.5);
    CHECK(a / b < 3.0);
    CHECK(b / a < 3.0);
  }
}

TEST_CASE("Parseval consistency of the block energies") {
  std::mt19937_64 seeds(41);
  for (int trial = 0; trial < 50; ++trial) {
    const auto u = random_band_limited(g1, {.seed = seeds()});
    double acc = 0.0;
    for (int q = -1; q <= q_complete(g1); ++q) acc += sq(block_l2(u, q));
    const double total = sq(u.l2());
    CHECK(acc >= total / 3.0);
    CHECK(acc <= total * 3.0);
  }
}

TEST_CASE("synthesis bound") {
  SECTION("blocks of a decomposition synthesize back") {
    const auto u = random_band_limited(g1, {.seed = 51});
    std::vector<std::pair<int, GridFunction>> blocks;
    for (const auto& b : decompose(u).blocks) blocks.push_back({b.q, b.values});
    for (double s : {-0.5, 0.5}) {
      const auto rep = synthesis_norm_bound(blocks, s, 3.0);
      CHECK(rep.pass);
      CHECK(rep.ratio <= 3.0);
      CHECK(rep.ratio >= 1.0 / 3.0);
    }
  }
  SECTION("single plateau block has ratio exactly 1") {
    const auto u = fourier_mode(g1, 11);
    const auto rep = synthesis_norm_bound({{3, u}}, -0.5, 3.0);
    CHECK(rep.ratio == Catch::Approx(1.0).epsilon(1e-12));
  }
  SECTION("ball-supported blocks are accepted when s > 0") {
    const auto a = fourier_mode(g1, 1);
    const auto b = fourier_mode(g1, 3);
    const auto rep = synthesis_norm_bound({{0, a}, {1, b}}, 0.5, 4.0);
    CHECK(rep.ratio > 0.0);
  }
  SECTION("support violation identifies the block") {
    const auto high = fourier_mode(g1, 64);
    CHECK_THROWS_WITH(synthesis_norm_bound({{0, high}}, -0.5, 2.0),
                      Catch::Matchers::ContainsSubstring("q = 0"));
  }
}

TEST_CASE("holder block norm") {
  SECTION("constants give zero") {
    const auto c = GridFunction::from_samples(g1, std::vector<cplx>(g1.size(), cplx{3.0, 0.0}), true);
    CHECK(holder_block_norm(c, Modulus::power(1.0)) == 0.0);
  }
  SECTION("sine against the Lipschitz modulus") {
    std::vector<cplx> s(g1.size());
    for (int i = 0; i < g1.n; ++i) s[i] = std::sin(kTwoPi * i / g1.n);
    const auto u = GridFunction::from_samples(g1, std::move(s), true);
    const double v1 = holder_block_norm(u, Modulus::power(1.0));
    CHECK(v1 > 0.0);
    CHECK(v1 <= 2.0);
    // Stable under refinement.
    const Grid fine{1, 2048, kTwoPi};
    std::vector<cplx> s2(fine.size());
    for (int i = 0; i < fine.n; ++i) s2[i] = std::sin(kTwoPi * i / fine.n);
    const auto u2 = GridFunction::from_samples(fine, std::move(s2), true);
    CHECK(holder_block_norm(u2, Modulus::power(1.0)) == Catch::Approx(v1).epsilon(1e-6));
  }
  SECTION("equivalence with the direct seminorm over random fields") {
    const Grid g{1, 256, kTwoPi};
    const auto omega = Modulus::power(1.0);
    double cmax = 0.0, cmin = 1e300;
    std::mt19937_64 seeds(61);
    for (int trial = 0; trial < 20; ++trial) {
      const auto u = random_band_limited(g, {.seed = seeds()});
      const double blockn = holder_block_norm(u, omega);
      const double semin = modulus_seminorm(u, omega);
      const double r = blockn / semin;
      cmax = std::max(cmax, r);
      cmin = std::min(cmin, r);
    }
    INFO("equivalence ratio range [" << cmin << ", " << cmax << "]");
    CHECK(cmax < 10.0);
    CHECK(cmin > 0.1);
  }
}

TEST_CASE("modulus seminorm examples") {
  SECTION("constant field") {
    const auto c = GridFunction::from_samples(g1, std::vector<cplx>(g1.size(), cplx{1.0, 0.0}), true);
    CHECK(modulus_seminorm(c, Modulus::power(1.0)) == 0.0);
  }
  SECTION("sine has Lipschitz constant 1") {
    std::vector<cplx> s(g1.size());
    for (int i = 0; i < g1.n; ++i) s[i] = std::sin(kTwoPi * i / g1.n);
    const auto u = GridFunction::from_samples(g1, std::move(s), true);
    CHECK(modulus_seminorm(u, Modulus::power(1.0)) == Catch::Approx(1.0).epsilon(2e-3));
  }
  SECTION("cosine against power(1/2) is stable under refinement") {
    auto make = [](int n) {
      const Grid g{1, n, kTwoPi};
      std::vector<cplx> s(g.size());
      for (int i = 0; i < n; ++i) s[i] = std::cos(kTwoPi * i / n);
      return GridFunction::from_samples(g, std::move(s), true);
    };
    const double c256 = modulus_seminorm(make(256), Modulus::power(0.5));
    const double c1024 = modulus_seminorm(make(1024), Modulus::power(0.5));
    CHECK(c1024 == Catch::Approx(c256).epsilon(1e-2));
  }
  SECTION("grid spacing >= 1 is rejected") {
    const Grid coarse{1, 4, kTwoPi};
    const auto c = GridFunction::zero(coarse);
    CHECK_THROWS_AS(modulus_seminorm(c, Modulus::power(1.0)), std::domain_error);
  }
}

TEST_CASE("block bound and low-pass tail bound for C^omega fields") {
  const Grid g{1, 512, kTwoPi};
  const auto omega = Modulus::log_lipschitz(1.0).derived_omega();
  FieldSpec spec{.seed = 71, .omega_profile = &omega};
  const auto a = random_band_limited(g, spec);
  const double anorm = holder_norm(a, omega);
  REQUIRE(anorm > 0.0);

  double worst_block = 0.0, worst_tail = 0.0;
  for (int q = -1; q <= q_complete(g); ++q) {
    const double dq = delta_q(a, q).linf();
    worst_block = std::max(worst_block, dq / (anorm * omega.extended(std::exp2(-q))));
  }
  for (int q = 0; q <= q_complete(g); ++q) {
    const auto tail = axpy(1.0, a, -1.0, s_q(a, q));
    worst_tail = std::max(worst_tail, tail.linf() / (anorm * omega(std::exp2(-q))));
  }
  INFO("block constant " << worst_block << ", tail constant " << worst_tail);
  CHECK(worst_block < 20.0);
  CHECK(worst_tail < 40.0);
}

TEST_CASE("low-pass of an elliptic coefficient matrix stays positive") {
  // 2x2 matrix field on a 1D grid: a11 = 1 + 0.5 sin x, a22 = 1, a12 = 0.25 cos x.
  const Grid g{1, 256, kTwoPi};
  std::vector<cplx> a11(g.size()), a12(g.size()), a22(g.size(), cplx{1.0, 0.0});
  for (int i = 0; i < g.n; ++i) {
    const double x = kTwoPi * i / g.n;
    a11[i] = 1.0 + 0.5 * std::sin(x);
    a12[i] = 0.25 * std::cos(x);
  }
  const auto f11 = GridFunction::from_samples(g, std::move(a11), true);
  const auto f12 = GridFunction::from_samples(g, std::move(a12), true);
  const auto f22 = GridFunction::from_samples(g, std::move(a22), true);

  auto min_eig = [&](const GridFunction& m11, const GridFunction& m12, const GridFunction& m22) {
    double worst = 1e300;
    for (std::size_t i = 0; i < m11.samples().size(); ++i) {
      const double p = m11.samples()[i].real(), r = m22.samples()[i].real();
      const double q = m12.samples()[i].real();
      worst = std::min(worst, 0.5 * (p + r) - std::sqrt(sq(0.5 * (p - r)) + q * q));
    }
    return worst;
  };
  const double a0 = min_eig(f11, f12, f22);
  REQUIRE(a0 > 0.0);

  int q0 = -2;
  for (int q = 0; q <= q_complete(g); ++q) {
    const double lam = min_eig(s_q(f11, q), s_q(f12, q), s_q(f22, q));
    if (lam >= 0.5 * a0) {
      q0 = q;
      break;
    }
  }
  INFO("measured q0 = " << q0);
  REQUIRE(q0 >= 0);
  for (int q = q0; q <= q_complete(g); ++q) {
    CHECK(min_eig(s_q(f11, q), s_q(f12, q), s_q(f22, q)) >= 0.5 * a0);
  }
}

TEST_CASE("declared-real fields stay real through round trips") {
  const auto u = random_band_limited(g1, {.seed = 81});
  REQUIRE(u.declared_real());
  const auto v = delta_q(s_q(u, 6), 3);
  CHECK(v.max_imag() <= 1e-12 * u.linf());
}
