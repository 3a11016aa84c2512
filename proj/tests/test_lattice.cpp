#include "rcu/errors.hpp"
#include "rcu/lattice.hpp"

#include "test_support.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

using namespace rcu;

namespace {

// True if every value lies on offset + k*span for some offset.
bool on_lattice(const std::vector<double>& v, double span, double tol = 1e-7) {
  for (double x : v) {
    const double d = x - v.front();
    if (std::abs(d - std::round(d / span) * span) > tol) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("BSC(0.15) information density values form a two-point lattice") {
  const double a = std::log(1.7), b = std::log(0.3);
  const auto info = detect_lattice(std::vector<double>{a, b, b, a});
  REQUIRE(info.is_lattice);
  CHECK(info.span == doctest::Approx(std::log(1.7 / 0.3)).epsilon(1e-13));
  CHECK(info.span == doctest::Approx(1.734601).epsilon(1e-6));
  CHECK(info.offset >= 0.0);
  CHECK(info.offset < info.span);
  CHECK(std::abs(std::remainder(a - info.offset, info.span)) < 1e-12);
}

TEST_CASE("integer set has span 1 and offset 0") {
  const auto info = detect_lattice(std::vector<double>{0, 1, 2, 3});
  CHECK(info.is_lattice);
  CHECK(info.span == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(info.offset == doctest::Approx(0.0));
}

TEST_CASE("irrational ratio is non-lattice") {
  CHECK_FALSE(detect_lattice(std::vector<double>{0, 1, std::sqrt(2.0)}).is_lattice);
  CHECK_FALSE(detect_lattice(std::vector<double>{0, 1, std::numbers::pi}).is_lattice);
}

TEST_CASE("rational ratios give the common span") {
  const auto info = detect_lattice(std::vector<double>{0.0, 0.3, 0.5});
  CHECK(info.is_lattice);
  CHECK(info.span == doctest::Approx(0.1).epsilon(1e-12));
}

TEST_CASE("single distinct value") {
  const auto v = detect_lattice(std::vector<double>{2.5, 2.5});
  CHECK(v.is_lattice);
  CHECK(v.span == 2.5);
  CHECK_FALSE(v.degenerate());
  CHECK(detect_lattice(std::vector<double>{0.0}).degenerate());
  CHECK(detect_lattice(std::vector<double>{1e-17, -2e-17}).degenerate());
}

TEST_CASE("argument validation") {
  CHECK_THROWS_AS(detect_lattice(std::vector<double>{}), InputError);
  CHECK_THROWS_AS(detect_lattice(std::vector<double>{1.0, 2.0}, 0.0), InputError);
}

TEST_CASE("noise below the tolerance does not break a lattice") {
  const auto info = detect_lattice(std::vector<double>{0.0, 0.7 + 1e-12, 1.4 - 1e-12, 2.1});
  CHECK(info.is_lattice);
  CHECK(info.span == doctest::Approx(0.7).epsilon(1e-10));
}

TEST_CASE("property: random lattices are recovered with maximal span") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 300; ++trial) {
    const double h = rcu::testing::uniform53(rng, 0.05, 3.0);
    const double g = rcu::testing::uniform53(rng, -5.0, 5.0);
    const int m = 2 + static_cast<int>(rng() % 6);
    std::vector<std::int64_t> idx;
    for (int i = 0; i < m; ++i) idx.push_back(static_cast<std::int64_t>(rng() % 20));
    // Force gcd 1 so h is the maximal span.
    idx.push_back(idx.front() + 1);
    std::vector<double> v;
    for (auto k : idx) v.push_back(g + static_cast<double>(k) * h);

    const auto info = detect_lattice(v);
    REQUIRE(info.is_lattice);
    CHECK(info.span == doctest::Approx(h).epsilon(1e-9));
    CHECK(info.offset >= 0.0);
    CHECK(info.offset < info.span);
    CHECK(on_lattice(v, info.span));
    // Maximality: twice the span never fits because two values are one step apart.
    CHECK_FALSE(on_lattice(v, 2 * info.span, 1e-6));

    // Permutation and duplication invariance.
    std::vector<double> w = v;
    std::shuffle(w.begin(), w.end(), rng);
    w.insert(w.end(), v.begin(), v.begin() + 2);
    const auto again = detect_lattice(w);
    CHECK(again.span == doctest::Approx(info.span).epsilon(1e-12));
    CHECK(again.offset == doctest::Approx(info.offset).epsilon(1e-9));

    // Scaling scales the span.
    std::vector<double> scaled;
    for (double x : v) scaled.push_back(3.0 * x);
    CHECK(detect_lattice(scaled).span == doctest::Approx(3.0 * info.span).epsilon(1e-9));
  }
}
