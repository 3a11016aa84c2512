#pragma once

#include "rcu/channel.hpp"
#include "rcu/exponent.hpp"
#include "rcu/lattice.hpp"

#include <cstdint>
#include <string>

namespace rcu {

inline constexpr double kLatticeWindowSigmas = 12.0;
inline constexpr std::int64_t kLatticeMaxTerms = 10'000'000;

// Result of any approximation: value = prefactor * exp(-n * exponent).
struct ApproxResult {
  std::int64_t n = 0;
  double rate = 0.0;  // nats/use
  std::string method;
  double log_value = 0.0;
  double log_prefactor = 0.0;
  double prefactor = 1.0;
  double exponent = 0.0;  // nats
  TiltingSolution solution;
  bool lattice_branch = false;
  LatticeInfo support_lattice;  // of R - i_s(X,Y) over the full support

  double value() const { return std::exp(log_value); }
};

// gamma_n = (n gamma) mod h in [0, h), and the first index i* with
// gamma_n + i* h >= threshold.
struct LatticeGrid {
  double gamma_n = 0.0;
  std::int64_t i_star = 0;
  double h = 0.0;
  double gamma = 0.0;
  double threshold = 0.0;

  // gamma_n + i* h - threshold, in [0, h).
  double phase() const { return gamma_n + static_cast<double>(i_star) * h - threshold; }
};

// log(sqrt(2 pi n c3) / psi_s), the split point of both prefactor forms.
double prefactor_threshold(const TiltingSolution& sol, std::int64_t n);

// (n gamma) mod h using an error-free product and a fused reduction.
double reduce_offset(std::int64_t n, double gamma, double h);

double log_beta_n_nonlattice(const TiltingSolution& sol, std::int64_t n);
double beta_n_nonlattice(const TiltingSolution& sol, std::int64_t n);

// Throws InputError unless the lattice has a positive span.
LatticeGrid lattice_grid(const TiltingSolution& sol, std::int64_t n, const LatticeInfo& lattice);

// Both series are truncated to window_sigmas standard deviations (in index
// space) around their completed-square peaks.
double log_beta_n_lattice(const TiltingSolution& sol, std::int64_t n, const LatticeGrid& grid,
                          double window_sigmas = kLatticeWindowSigmas);
double beta_n_lattice(const TiltingSolution& sol, std::int64_t n, const LatticeGrid& grid,
                      double window_sigmas = kLatticeWindowSigmas);

// Lattice structure of R - i_s(X,Y) over the support of Q x W.
LatticeInfo support_lattice(const ChannelModel& channel, double s, double rate);

// beta_n exp(-n (E0 - rho_hat R)), lattice or non-lattice branch chosen from
// the support of R - i_s(X,Y).
ApproxResult saddlepoint_approx(const ChannelModel& channel, std::int64_t n, double rate, SPolicy s = std::nullopt);

}  // namespace rcu
