// Acceptance suite: one PASS/FAIL line per criterion, with measured values
// and wall time. Exits nonzero if any criterion fails.

#include "rcu/asymptotics.hpp"
#include "rcu/exponent.hpp"
#include "rcu/gaussian.hpp"
#include "rcu/info_measures.hpp"
#include "rcu/log_math.hpp"
#include "rcu/oracle.hpp"
#include "rcu/saddlepoint.hpp"

#include "test_support.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace rcu;
using rcu::testing::rel_err;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void run(int id, const char* title, double limit_seconds, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (secs > limit_seconds) {
    o.pass = false;
    o.detail += " [runtime limit " + std::to_string(limit_seconds) + " s exceeded]";
  }
  if (!o.pass) ++failures;
  std::printf("[%s] %2d %s: %s (%.3f s)\n", o.pass ? "PASS" : "FAIL", id, title, o.detail.c_str(), secs);
  std::fflush(stdout);
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

const ChannelModel kBsc = builtin_bsc(0.15);

Outcome constants() {
  const double i1 = nats_to_bits(e0_derivatives(kBsc, 0.0, 1.0).first);
  const double rcr = nats_to_bits(critical_rate(kBsc, 0.5));
  return {std::abs(i1 - 0.390) <= 0.001 && std::abs(rcr - 0.124) <= 0.001,
          fmt("I_1 = %.6f bits (target 0.390), R_cr = %.6f bits (target 0.124)", i1, rcr)};
}

Outcome derivatives() {
  std::mt19937_64 rng(20240531);
  const std::vector<ChannelModel> channels{kBsc, rcu::testing::random_channel(rng, 3, 4)};
  double worst1 = 0.0, worst2 = 0.0;
  int points = 0;
  for (const auto& ch : channels)
    for (int i = 0; i <= 20; ++i)
      for (double s : {0.25, 0.5, 0.75, 1.0, 1.25, 1.5}) {
        const double rho = i / 20.0;
        const auto d = e0_derivatives(ch, rho, s);
        worst1 = std::max(worst1, rel_err(d.first, static_cast<double>(rcu::testing::e0_first_fd(ch, rho, s, 1e-5L))));
        worst2 = std::max(worst2, rel_err(d.second, static_cast<double>(rcu::testing::e0_second_fd(ch, rho, s, 1e-5L))));
        ++points;
      }
  return {worst1 <= 1e-6 && worst2 <= 1e-6,
          fmt("%d grid points, max rel err first = %.2e, second = %.2e (limit 1e-6)", points, worst1, worst2)};
}

Outcome closed_form_integral() {
  std::mt19937_64 rng(8675309);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double a = rcu::testing::uniform53(rng, -10, 10), b = rcu::testing::uniform53(rng, -1.5, 1.5);
    const double mu = rcu::testing::uniform53(rng, -5, 5), s2 = rcu::testing::uniform53(rng, 0.05, 9);
    worst = std::max(worst, rel_err(exp_gauss_integral(a, b, mu, s2), rcu::testing::exp_gauss_quadrature(a, b, mu, s2)));
  }
  return {worst <= 1e-8, fmt("100 random parameter sets, max rel err = %.2e (limit 1e-8)", worst)};
}

Outcome lattice_truncation() {
  double worst = 0.0;
  for (double bits : {0.06, 0.2, 0.35})
    for (std::int64_t n : {100, 1000, 10000}) {
      const double rate = bits_to_nats(bits);
      const auto sol = tilting_solution(kBsc, rate);
      const auto grid = lattice_grid(sol, n, support_lattice(kBsc, sol.s, rate));
      worst = std::max(worst, rel_err(beta_n_lattice(sol, n, grid, 12.0), beta_n_lattice(sol, n, grid, 60.0)));
    }
  return {worst <= 1e-10, fmt("max rel diff 12 sd vs 60 sd = %.2e (limit 1e-10)", worst)};
}

double saddlepoint_over_rcuss(std::int64_t n, double rate) {
  const auto sp = saddlepoint_approx(kBsc, n, rate);
  const auto& sol = sp.solution;
  const auto ex = bsc_exact_rcuss(0.15, n, static_cast<double>(n) * rate, sol.s, sol.psi_s, sol.c3);
  return std::exp(sp.log_value - ex.log_value);
}

Outcome theorem_consistency() {
  const double rate = bits_to_nats(0.2);
  const double r200 = saddlepoint_over_rcuss(200, rate), r2000 = saddlepoint_over_rcuss(2000, rate);
  return {std::abs(r2000 - 1) < std::abs(r200 - 1) && std::abs(r2000 - 1) <= 0.05,
          fmt("r(200) = %.6f, r(2000) = %.6f", r200, r2000)};
}

Outcome regime_expansions() {
  const std::int64_t n = 100000;
  struct Channel {
    const char* name;
    ChannelModel ch;
  };
  const std::vector<Channel> channels{{"bsc", kBsc}, {"nonlattice", rcu::testing::asym23()}};
  bool pass = true;
  std::ostringstream os;
  for (const auto& c : channels) {
    const double rcr = critical_rate(c.ch, 0.5);
    const double i1 = mutual_information(c.ch);
    struct Point {
      const char* regime;
      double rate;
      SPolicy s;
    };
    // s follows the self-consistent rule: 1/2 below and at R_cr, 1 at and above I_1.
    const std::vector<Point> pts{{"below", 0.5 * rcr, std::nullopt},
                                 {"at_critical", rcr, 0.5},
                                 {"between", 0.5 * (rcr + i1), std::nullopt},
                                 {"at_Is", i1, 1.0},
                                 {"above", 1.2 * i1, std::nullopt}};
    for (const auto& p : pts) {
      const double beta = saddlepoint_approx(c.ch, n, p.rate, p.s).prefactor;
      const double ea = exact_asymptotics_approx(c.ch, n, p.rate, p.s).prefactor;
      const double ratio = ea / beta;
      const bool ok = ratio >= 0.99 && ratio <= 1.01;
      pass = pass && ok;
      os << c.name << "/" << p.regime << "=" << fmt("%.5f", ratio) << (ok ? "" : "(out)") << " ";
    }
  }
  return {pass, "ratios at n=1e5: " + os.str()};
}

Outcome third_order() {
  const double eps = 1e-3;
  const auto m = density_moments(information_density(kBsc, 1.0));
  const double qinv = gaussian_q_inverse(eps);
  double lo = INFINITY, hi = -INFINITY;
  std::ostringstream os;
  for (std::int64_t n : {1000, 10000, 100000}) {
    const double nd = static_cast<double>(n);
    auto log_rcuss = [&](double rate) {
      const auto sol = tilting_solution(kBsc, rate, 1.0);
      return bsc_exact_rcuss(0.15, n, nd * rate, 1.0, sol.psi_s, sol.c3).log_value;
    };
    const double rate = invert_rate(log_rcuss, std::log(eps), 1e-6, std::log(2.0));
    const double third = nd * rate - nd * m.mean + std::sqrt(nd * m.variance) * qinv - 0.5 * std::log(nd);
    lo = std::min(lo, third);
    hi = std::max(hi, third);
    os << fmt("n=%lld: %.4f ", static_cast<long long>(n), third);
  }
  return {hi - lo < 2.0, os.str() + fmt("range %.4f nats (limit 2)", hi - lo)};
}

Outcome figure_closeness() {
  const double eps = 1e-5;
  const double sp500 = rate_for_epsilon(kBsc, 500, eps, ApproxMethod::saddlepoint);
  const double rcu500 =
      invert_rate([](double r) { return bsc_exact_rcu(0.15, 500, 500 * r).log_value; }, std::log(eps), 0.0, std::log(2.0));
  const double gap = std::abs(nats_to_bits(sp500 - rcu500));
  const double cap = mutual_information(kBsc);
  bool ordered = true;
  double min_margin = INFINITY;
  for (std::int64_t n = 100; n <= 2000; n += 100) {
    const double sp = rate_for_epsilon(kBsc, n, eps, ApproxMethod::saddlepoint);
    const double ex = rate_for_epsilon(kBsc, n, eps, ApproxMethod::exponent);
    ordered = ordered && sp > ex && sp < cap;
    min_margin = std::min(min_margin, nats_to_bits(sp - ex));
  }
  return {gap <= 0.005 && ordered,
          fmt("n=500: saddlepoint %.6f bits, exact RCU %.6f bits, gap %.6f (limit 0.005); "
              "grid n=100..2000: exponent < saddlepoint < capacity %s, min margin %.4f bits",
              nats_to_bits(sp500), nats_to_bits(rcu500), gap, ordered ? "holds" : "VIOLATED", min_margin)};
}

struct Instance {
  std::int64_t n;
  double logM;
  double s;
};

std::vector<Instance> exhaustive_instances() {
  std::vector<Instance> out;
  for (std::int64_t n = 1; n <= 12; ++n)
    for (double bits : {0.1, 0.2, 0.3, 0.4, 0.5}) {
      const double rate = bits_to_nats(bits);
      out.push_back({n, static_cast<double>(n) * rate, select_s(kBsc, rate)});
    }
  return out;
}

Outcome exhaustive_equivalence() {
  double worst = 0.0;
  const auto inst = exhaustive_instances();
  for (const auto& i : inst) {
    worst = std::max(worst, std::abs(exact_rcus_small(kBsc, i.n, i.logM, i.s).value - bsc_exact_rcus(0.15, i.n, i.logM, i.s).value));
  }
  return {worst <= 1e-12, fmt("%zu instances (n <= 12, 5 logM each), max abs diff = %.2e (limit 1e-12)", inst.size(), worst)};
}

Outcome weakening_direction() {
  double worst = -INFINITY;
  const auto inst = exhaustive_instances();
  for (const auto& i : inst) {
    const double rcu = exact_rcu_small(kBsc, i.n, i.logM).value;
    const double rcus = exact_rcus_small(kBsc, i.n, i.logM, i.s).value;
    worst = std::max(worst, rcu - rcus);
  }
  return {worst <= 1e-12, fmt("%zu instances, max (rcu - rcu_s) = %.2e (limit 1e-12)", inst.size(), worst)};
}

}  // namespace

int main() {
  run(1, "reference constants", 1.0, constants);
  run(2, "derivative correctness", 1.0, derivatives);
  run(3, "closed-form integral", 5.0, closed_form_integral);
  run(4, "lattice-sum truncation", 10.0, lattice_truncation);
  run(5, "saddlepoint / rcu_s** consistency", 30.0, theorem_consistency);
  run(6, "regime expansions", 30.0, regime_expansions);
  run(7, "third-order term", 60.0, third_order);
  run(8, "figure closeness", 60.0, figure_closeness);
  // Criterion 10 reuses the instances of 9; its time is included there.
  const auto t0 = std::chrono::steady_clock::now();
  run(9, "exhaustive oracle equivalence", 60.0, exhaustive_equivalence);
  run(10, "weakening direction", 60.0 - std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count(),
      weakening_direction);
  std::printf("%d of 10 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
