#include "rcu/saddlepoint.hpp"

#include "rcu/errors.hpp"
#include "rcu/gaussian.hpp"
#include "rcu/info_measures.hpp"
#include "rcu/log_math.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

namespace rcu {

namespace {

void require_n(std::int64_t n) {
  if (n < 1) throw InputError("block length n must be positive");
}

// sum over i in [lo, hi] of exp(b_0 + b_1 i + b_2 i^2), with the
// quadratic given through z_i = gamma_n + i h.
class LatticeSeries {
 public:
  LatticeSeries(double gamma_n, double h, double mu, double sigma2)
      : gamma_n_(gamma_n), h_(h), mu_(mu), sigma2_(sigma2),
        log_norm_(std::log(h) - 0.5 * std::log(2.0 * std::numbers::pi * sigma2)) {}

  // log sum_{i=lo}^{hi} e^{b z_i} phi_h(z_i; mu, sigma2)
  double log_sum(double b, std::int64_t lo, std::int64_t hi) const {
    LogAccumulator acc;
    for (std::int64_t i = lo; i <= hi; ++i) {
      const double z = gamma_n_ + static_cast<double>(i) * h_;
      const double d = z - mu_;
      acc.add(b * z + log_norm_ - d * d / (2.0 * sigma2_));
    }
    return acc.value();
  }

  // Index of the completed-square peak of e^{b z} phi(z).
  double peak(double b) const { return (mu_ + b * sigma2_ - gamma_n_) / h_; }
  double index_sigma() const { return std::sqrt(sigma2_) / h_; }

 private:
  double gamma_n_, h_, mu_, sigma2_, log_norm_;
};

std::int64_t half_width(const LatticeSeries& series, double window_sigmas) {
  const double k = std::ceil(window_sigmas * series.index_sigma()) + 1.0;
  return static_cast<std::int64_t>(std::min(k, static_cast<double>(kLatticeMaxTerms / 2)));
}

}  // namespace

double prefactor_threshold(const TiltingSolution& sol, std::int64_t n) {
  return 0.5 * std::log(2.0 * std::numbers::pi * static_cast<double>(n) * sol.c3) - std::log(sol.psi_s);
}

double reduce_offset(std::int64_t n, double gamma, double h) {
  const double nd = static_cast<double>(n);
  const double p = nd * gamma;
  const double e = std::fma(nd, gamma, -p);  // p + e == n * gamma exactly
  const double q = std::floor(p / h);
  double r = std::fma(-q, h, p) + e;
  while (r < 0.0) r += h;
  while (r >= h) r -= h;
  return r;
}

double log_beta_n_nonlattice(const TiltingSolution& sol, std::int64_t n) {
  require_n(n);
  if (!(sol.c2 > 0.0) || !(sol.c3 > 0.0)) throw NumericError("non-lattice prefactor requires c2 > 0 and c3 > 0");
  const double nd = static_cast<double>(n);
  const double mu = nd * sol.c1;
  const double sigma2 = nd * sol.c2;
  const double t = prefactor_threshold(sol, n);
  const double upper = log_exp_gauss_integral(t, -sol.rho_hat, mu, sigma2);
  const double lower = -t + log_exp_gauss_integral_below(t, 1.0 - sol.rho_hat, mu, sigma2);
  return log_add(upper, lower);
}

double beta_n_nonlattice(const TiltingSolution& sol, std::int64_t n) { return std::exp(log_beta_n_nonlattice(sol, n)); }

LatticeGrid lattice_grid(const TiltingSolution& sol, std::int64_t n, const LatticeInfo& lattice) {
  require_n(n);
  if (!lattice.is_lattice || !(lattice.span > 0.0)) throw InputError("lattice_grid requires a lattice with positive span");
  LatticeGrid g;
  g.h = lattice.span;
  g.gamma = lattice.offset;
  g.gamma_n = reduce_offset(n, lattice.offset, lattice.span);
  g.threshold = prefactor_threshold(sol, n);

  auto i = static_cast<std::int64_t>(std::ceil((g.threshold - g.gamma_n) / g.h));
  while (g.gamma_n + static_cast<double>(i) * g.h < g.threshold) ++i;
  while (g.gamma_n + static_cast<double>(i - 1) * g.h >= g.threshold) --i;
  g.i_star = i;
  return g;
}

double log_beta_n_lattice(const TiltingSolution& sol, std::int64_t n, const LatticeGrid& grid, double window_sigmas) {
  require_n(n);
  if (!(grid.h > 0.0)) throw InputError("lattice prefactor requires a positive span");
  if (!(sol.c2 > 0.0) || !(sol.c3 > 0.0)) throw NumericError("lattice prefactor requires c2 > 0 and c3 > 0");
  const double nd = static_cast<double>(n);
  const LatticeSeries series(grid.gamma_n, grid.h, nd * sol.c1, nd * sol.c2);
  const std::int64_t k = half_width(series, window_sigmas);

  // i >= i*: weight e^{-rho z}
  const double b_up = -sol.rho_hat;
  const double c_up = std::max(series.peak(b_up), static_cast<double>(grid.i_star));
  const std::int64_t up_lo = std::max(grid.i_star, static_cast<std::int64_t>(std::floor(c_up)) - k);
  const std::int64_t up_hi = static_cast<std::int64_t>(std::ceil(c_up)) + k;
  const double upper = series.log_sum(b_up, up_lo, up_hi);

  // i <= i* - 1: weight e^{(1 - rho) z}, scaled by psi / sqrt(2 pi n c3)
  const double b_dn = 1.0 - sol.rho_hat;
  const double c_dn = std::min(series.peak(b_dn), static_cast<double>(grid.i_star - 1));
  const std::int64_t dn_hi = std::min(grid.i_star - 1, static_cast<std::int64_t>(std::ceil(c_dn)) + k);
  const std::int64_t dn_lo = static_cast<std::int64_t>(std::floor(c_dn)) - k;
  const double lower = -grid.threshold + series.log_sum(b_dn, dn_lo, dn_hi);

  return log_add(upper, lower);
}

double beta_n_lattice(const TiltingSolution& sol, std::int64_t n, const LatticeGrid& grid, double window_sigmas) {
  return std::exp(log_beta_n_lattice(sol, n, grid, window_sigmas));
}

LatticeInfo support_lattice(const ChannelModel& channel, double s, double rate) {
  const DensityTable table = information_density(channel, s);
  std::vector<double> v(table.size());
  for (Eigen::Index k = 0; k < table.size(); ++k) v[k] = rate - table.value(k);
  return detect_lattice(v);
}

ApproxResult saddlepoint_approx(const ChannelModel& channel, std::int64_t n, double rate, SPolicy s) {
  require_n(n);
  ApproxResult r;
  r.n = n;
  r.rate = rate;
  r.method = "saddlepoint";
  r.solution = tilting_solution(channel, rate, s);
  r.support_lattice = support_lattice(channel, r.solution.s, rate);
  r.lattice_branch = r.support_lattice.is_lattice && r.support_lattice.span > 0.0;
  r.log_prefactor = r.lattice_branch
                        ? log_beta_n_lattice(r.solution, n, lattice_grid(r.solution, n, r.support_lattice))
                        : log_beta_n_nonlattice(r.solution, n);
  r.prefactor = std::exp(r.log_prefactor);
  r.exponent = r.solution.exponent();
  r.log_value = r.log_prefactor - static_cast<double>(n) * r.exponent;
  return r;
}

}  // namespace rcu
