#include "rcu/errors.hpp"
#include "rcu/exponent.hpp"
#include "rcu/info_measures.hpp"
#include "rcu/log_math.hpp"
#include "rcu/saddlepoint.hpp"

#include "test_support.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <doctest.h>

#include <cmath>
#include <random>

using namespace rcu;
using rcu::testing::rel_err;

namespace {

TiltingSolution synthetic(double rho, double c1, double c2, double c3, double psi) {
  TiltingSolution s;
  s.rho_hat = rho;
  s.c1 = c1;
  s.c2 = c2;
  s.c3 = c3;
  s.psi_s = psi;
  return s;
}

double exact_mod(std::int64_t n, double gamma, double h) {
  using big = boost::multiprecision::cpp_bin_float_100;
  big p = big(n) * big(gamma);
  big r = p - boost::multiprecision::floor(p / big(h)) * big(h);
  return r.convert_to<double>();
}

}  // namespace

TEST_CASE("non-lattice prefactor matches quadrature") {
  const auto ch = rcu::testing::asym23();
  const double cap = mutual_information(ch);
  for (double frac : {0.1, 0.5, 0.8, 1.2})
    for (std::int64_t n : {10, 100, 1000, 10000}) {
      const auto sol = tilting_solution(ch, frac * cap);
      const double q = rcu::testing::beta_nonlattice_quadrature(sol.rho_hat, sol.c1, sol.c2, sol.c3, sol.psi_s, n);
      CHECK(rel_err(beta_n_nonlattice(sol, n), q) <= 1e-8);
    }
}

TEST_CASE("non-lattice prefactor limits") {
  const auto ch = rcu::testing::asym23();
  const double cap = mutual_information(ch);
  SUBCASE("rho_hat = 0 tends to 1") {
    const auto sol = tilting_solution(ch, 1.2 * cap);
    REQUIRE(sol.rho_hat == 0.0);
    CHECK(std::abs(beta_n_nonlattice(sol, 10000) - 1.0) < 1e-3);
  }
  SUBCASE("rho_hat = 1 tends to psi / sqrt(2 pi n c3)") {
    const auto sol = tilting_solution(ch, 0.01);
    REQUIRE(sol.rho_hat == 1.0);
    const std::int64_t n = 10000;
    const double scale = sol.psi_s / std::sqrt(2 * std::numbers::pi * n * sol.c3);
    CHECK(std::abs(beta_n_nonlattice(sol, n) / scale - 1.0) < 0.01);
  }
}

TEST_CASE("reduce_offset") {
  CHECK(reduce_offset(7, 0.3, 1.0) == doctest::Approx(0.1).epsilon(1e-14));
  CHECK(reduce_offset(5, 0.0, 1.3) == 0.0);
  std::mt19937_64 rng(71);
  for (int i = 0; i < 200; ++i) {
    const double h = rcu::testing::uniform53(rng, 0.1, 3.0);
    const double g = rcu::testing::uniform53(rng, 0.0, h);
    const std::int64_t n = 1 + static_cast<std::int64_t>(rng() % 1'000'000'000);
    const double r = reduce_offset(n, g, h);
    CHECK(r >= 0.0);
    CHECK(r < h);
    const double e = exact_mod(n, g, h);
    // Compare on the circle of circumference h.
    const double d = std::abs(r - e);
    CHECK(std::min(d, h - d) <= 1e-14 * h);
  }
}

TEST_CASE("lattice grid indexing") {
  const auto sol = synthetic(0.4, 0.0, 0.3, 0.2, 1.5);
  LatticeInfo lat;
  lat.is_lattice = true;
  lat.span = 0.7;
  lat.offset = 0.25;
  for (std::int64_t n : {1, 10, 1000, 123456}) {
    const auto g = lattice_grid(sol, n, lat);
    CHECK(g.gamma_n >= 0.0);
    CHECK(g.gamma_n < g.h);
    CHECK(g.gamma_n + g.i_star * g.h >= g.threshold);
    CHECK(g.gamma_n + (g.i_star - 1) * g.h < g.threshold);
    CHECK(g.phase() >= 0.0);
    CHECK(g.phase() < g.h);
    CHECK(g.threshold == doctest::Approx(prefactor_threshold(sol, n)));
  }
  LatticeInfo none;
  CHECK_THROWS_AS(lattice_grid(sol, 10, none), InputError);
}

TEST_CASE("lattice prefactor matches a brute-force sum") {
  const auto ch = builtin_bsc(0.15);
  for (double bits : {0.06, 0.2, 0.35})
    for (std::int64_t n : {10, 100, 1000, 10000}) {
      const double rate = bits_to_nats(bits);
      const auto sol = tilting_solution(ch, rate);
      const auto lat = support_lattice(ch, sol.s, rate);
      REQUIRE(lat.is_lattice);
      const double bf = rcu::testing::beta_lattice_bruteforce(sol.rho_hat, sol.c1, sol.c2, sol.c3, sol.psi_s, n,
                                                              lat.offset, lat.span);
      const double b = beta_n_lattice(sol, n, lattice_grid(sol, n, lat));
      CHECK(rel_err(b, bf) <= 1e-10);
    }
}

TEST_CASE("lattice window: 12 sd agrees with 24 and 60 sd") {
  const auto ch = builtin_bsc(0.15);
  for (double bits : {0.06, 0.2, 0.35})
    for (std::int64_t n : {100, 1000, 10000, 1000000}) {
      const double rate = bits_to_nats(bits);
      const auto sol = tilting_solution(ch, rate);
      const auto g = lattice_grid(sol, n, support_lattice(ch, sol.s, rate));
      const double b12 = beta_n_lattice(sol, n, g, 12.0);
      CHECK(rel_err(b12, beta_n_lattice(sol, n, g, 24.0)) <= 1e-12);
      CHECK(rel_err(b12, beta_n_lattice(sol, n, g, 60.0)) <= 1e-10);
    }
}

TEST_CASE("lattice prefactor limits") {
  SUBCASE("rho_hat = 0, large n tends to 1") {
    const auto sol = synthetic(0.0, 0.05, 0.4, 0.3, 1.2);
    LatticeInfo lat{true, 0.9, 0.3};
    CHECK(std::abs(beta_n_lattice(sol, 10000, lattice_grid(sol, 10000, lat)) - 1.0) < 0.01);
  }
  SUBCASE("fine span approaches the non-lattice form") {
    const auto sol = synthetic(0.4, 0.0, 0.5, 0.3, 1.0);
    LatticeInfo lat{true, 1e-3, 0.0};
    const std::int64_t n = 1000;
    CHECK(rel_err(beta_n_lattice(sol, n, lattice_grid(sol, n, lat)), beta_n_nonlattice(sol, n)) <= 1e-3);
  }
}

TEST_CASE("saddlepoint_approx branch selection and assembly") {
  const auto bsc = saddlepoint_approx(builtin_bsc(0.15), 500, bits_to_nats(0.2));
  CHECK(bsc.lattice_branch);
  CHECK(bsc.solution.psi_s > 1.0);
  CHECK(bsc.log_value == doctest::Approx(bsc.log_prefactor - 500 * bsc.exponent));
  CHECK(bsc.prefactor > 0.0);

  const auto nl = saddlepoint_approx(rcu::testing::asym23(), 500, 0.15);
  CHECK_FALSE(nl.lattice_branch);
  CHECK(nl.log_prefactor == doctest::Approx(log_beta_n_nonlattice(nl.solution, 500)));

  CHECK_THROWS_AS(saddlepoint_approx(rcu::testing::identical_rows(), 100, 0.1), SingularChannelError);
  CHECK_THROWS_AS(saddlepoint_approx(builtin_bsc(0.15), 0, 0.1), InputError);
}

TEST_CASE("at R = I_1 with s = 1 the prefactor is close to 1/2") {
  const auto ch = builtin_bsc(0.15);
  const double i1 = mutual_information(ch);
  const auto r = saddlepoint_approx(ch, 10000, i1, 1.0);
  CHECK(r.solution.rho_hat == 0.0);
  CHECK(std::abs(r.prefactor - 0.5) <= 0.025);
}

TEST_CASE("property: prefactor is positive and continuous in the rate") {
  for (const auto& ch : {builtin_bsc(0.15), rcu::testing::asym23()}) {
    const double cap = mutual_information(ch);
    for (std::int64_t n : {50, 500, 5000}) {
      double prev = std::nan("");
      for (int i = 0; i <= 600; ++i) {
        const double rate = 1.1 * cap * i / 600.0;
        const auto r = saddlepoint_approx(ch, n, rate);
        CHECK(r.prefactor > 0.0);
        CHECK(std::isfinite(r.log_value));
        if (!std::isnan(prev)) CHECK(std::abs(r.log_prefactor - prev) <= 0.2);
        prev = r.log_prefactor;
      }
    }
  }
}

TEST_CASE("property: no jump across the regime boundaries") {
  const auto ch = builtin_bsc(0.15);
  const double rcr = critical_rate(ch, 0.5);
  const double cap = mutual_information(ch);
  for (double edge : {rcr, cap})
    for (std::int64_t n : {100, 10000}) {
      // The slope in R is at most n, so 2e-10 nats of rate moves log value by <= 2e-6.
      const double below = saddlepoint_approx(ch, n, edge - 1e-10).log_value;
      const double above = saddlepoint_approx(ch, n, edge + 1e-10).log_value;
      CHECK(std::abs(above - below) <= 1e-5);
    }
}

TEST_CASE("property: value is non-decreasing in the rate") {
  for (const auto& ch : {builtin_bsc(0.15), rcu::testing::asym23()}) {
    const double cap = mutual_information(ch);
    for (std::int64_t n : {20, 200, 2000}) {
      double prev = -INFINITY;
      for (int i = 0; i <= 200; ++i) {
        const double v = saddlepoint_approx(ch, n, 1.2 * cap * i / 200.0).log_value;
        CHECK(v >= prev - 1e-9);
        prev = v;
      }
    }
  }
}
