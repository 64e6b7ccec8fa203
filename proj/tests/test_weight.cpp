#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "paley/weight.hpp"

using namespace paley;

TEST_CASE("phi closed forms") {
  SECTION("power(1): phi(t) = log t") {
    const auto phi = build_phi(Modulus::power(1.0), 20.0);
    CHECK(phi(1.0) == Catch::Approx(0.0).margin(1e-12));
    CHECK(phi(std::exp(1.0)) == Catch::Approx(1.0).epsilon(1e-9));
    CHECK(phi(10.0) == Catch::Approx(std::log(10.0)).epsilon(1e-9));
  }
  SECTION("log-lipschitz(1): phi(t) = log(1 + log t)") {
    const auto phi = build_phi(Modulus::log_lipschitz(1.0), 20.0);
    CHECK(phi(std::exp(1.0)) == Catch::Approx(std::log(2.0)).epsilon(1e-9));
  }
  SECTION("phi(1) = 0 for any family") {
    for (const auto& mu : {Modulus::power(0.5), Modulus::log_lipschitz(0.5)}) {
      CHECK(build_phi(mu, 4.0)(1.0) == Catch::Approx(0.0).margin(1e-12));
    }
  }
}

TEST_CASE("weight table for power(1): Phi(tau) = e^tau - 1") {
  const auto w = WeightTable::build(Modulus::power(1.0), 2.0);
  CHECK(w.Phi(0.0) == Catch::Approx(0.0).margin(1e-12));
  CHECK(w.Phi(1.0) == Catch::Approx(std::exp(1.0) - 1.0).epsilon(1e-9));
  CHECK(w.Phi_prime(1.0) == Catch::Approx(std::exp(1.0)).epsilon(1e-9));
  // ODE closed-form check at tau = 1: Phi'' = e and (Phi')^2 mu(1/Phi') = e.
  CHECK(w.Phi_double_prime(1.0) == Catch::Approx(std::exp(1.0)).epsilon(1e-9));
  CHECK(w.ode_residual(1.0) < 1e-8);
}

TEST_CASE("weight table invariants") {
  for (const auto& mu :
       {Modulus::power(1.0), Modulus::log_lipschitz(1.0), Modulus::log_lipschitz(0.5)}) {
    const auto w = WeightTable::build(mu, 4.0);
    INFO(mu.describe());
    SECTION("Phi' >= 1, Phi' and Phi'' non-decreasing on nodes: " + mu.describe()) {
      double prev_p = 0.0, prev_dd = 0.0;
      for (double tau : w.tau_nodes()) {
        const double p = w.Phi_prime(tau);
        const double dd = w.Phi_double_prime(tau);
        CHECK(p >= 1.0 - 1e-12);
        CHECK(p >= prev_p * (1.0 - 1e-12));
        CHECK(dd >= prev_dd * (1.0 - 1e-10));
        prev_p = p;
        prev_dd = dd;
      }
    }
    SECTION("ODE residual small at interior nodes: " + mu.describe()) {
      const auto nodes = w.tau_nodes();
      for (std::size_t i = 1; i + 1 < nodes.size(); i += 7) {
        const double tau = nodes[i];
        if (tau < 0.05) continue;
        INFO("tau = " << tau);
        CHECK(w.ode_residual(tau) <= 1e-6);
      }
    }
  }
}

TEST_CASE("finite-difference Phi'' agrees with the identity side at spacing 1e-3") {
  const auto w = WeightTable::build(Modulus::log_lipschitz(1.0), 3.0);
  for (double tau : {0.5, 1.0, 1.7, 2.5}) {
    const double h = 1e-3;
    const double fd = fd_derivative4([&](double x) { return w.phi_inverse_refined(x); }, tau, h);
    const double ode = w.Phi_double_prime(tau);
    CHECK(std::abs(fd - ode) / ode < 1e-5);
  }
}

TEST_CASE("round trip phi(phi^{-1}(s)) = s") {
  const auto w = WeightTable::build(Modulus::log_lipschitz(1.0), 3.0);
  std::mt19937_64 eng(7);
  std::uniform_real_distribution<double> unif(0.0, 3.0);
  for (int i = 0; i < 100; ++i) {
    const double s = unif(eng);
    const double t = w.phi_inverse_refined(s);
    CHECK(w.phi_refined(t) == Catch::Approx(s).margin(1e-10).epsilon(1e-10));
  }
}

TEST_CASE("Phi' exceeds 1e3 for Osgood moduli once tau_max is extended") {
  const auto w = WeightTable::build(Modulus::log_lipschitz(1.0), 2.2);
  CHECK(w.Phi_prime(2.2) > 1e3);
}

TEST_CASE("non-Osgood modulus raises the range error") {
  CHECK_THROWS_AS(WeightTable::build(Modulus::power(0.5), 4.0), OsgoodRangeError);
  // Requests inside the bounded range still work: sup phi = 2 for power(1/2).
  const auto w = WeightTable::build(Modulus::power(0.5), 1.5);
  CHECK(w.Phi_prime(1.0) > 1.0);
}

TEST_CASE("queries beyond the tabulated range raise the range error") {
  const auto w = WeightTable::build(Modulus::power(1.0), 1.0);
  CHECK_THROWS_AS(w.Phi_prime(50.0), OsgoodRangeError);
}
