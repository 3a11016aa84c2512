#pragma once

#include "rcu/channel.hpp"

#include <cstdint>
#include <optional>
#include <string>

namespace rcu {

// Reference evaluations of the RCU family:
//   rcu    = E[min{1, (M-1) P[W^n(Y|X') >= W^n(Y|X) | X, Y]}]
//   rcu_s  = E[min{1, (M-1) exp(-i_s^n(X,Y))}]
//   rcu_s** = E[min{1, M psi_s / sqrt(2 pi n c3) exp(-i_s^n(X,Y))}]
struct OracleResult {
  double value = 0.0;
  double log_value = 0.0;
  std::string method;
  bool exact = true;
  std::optional<double> ci_halfwidth;  // Monte-Carlo only, 95% normal theory
};

inline constexpr std::int64_t kBscOracleMaxN = 100'000;
inline constexpr int kExhaustiveMaxN = 12;
inline constexpr double kExhaustiveMaxPairs = 1e8;
inline constexpr std::size_t kMonteCarloMaxSupport = 1'000'000;

// log(M - 1) for M = e^{logM}; -inf when M <= 1.
double log_m_minus_one(double logM);

// Conditions on the flip count t ~ Binomial(n, delta). A competing codeword
// wins iff its distance to y is at most t (ties count, as in the >= above).
OracleResult bsc_exact_rcu(double delta, std::int64_t n, double logM);

// rcu_s with the (M - 1) coefficient.
OracleResult bsc_exact_rcus(double delta, std::int64_t n, double logM, double s);

// rcu_s** with the M psi_s / sqrt(2 pi n c3) coefficient.
OracleResult bsc_exact_rcuss(double delta, std::int64_t n, double logM, double s, double psi_s, double c3);

// Exhaustive enumeration over (x, y) sequences, n <= 12.
OracleResult exact_rcus_small(const ChannelModel& channel, std::int64_t n, double logM, double s);
OracleResult exact_rcuss_small(const ChannelModel& channel, std::int64_t n, double logM, double s, double psi_s, double c3);

// Exhaustive rcu, n <= 12. Outputs are grouped by type; the competing
// likelihood distribution is enumerated over all x' sequences.
OracleResult exact_rcu_small(const ChannelModel& channel, std::int64_t n, double logM);

// Optional change of measure: letters are drawn from the tilted joint
// proportional to Q(x)W(y|x) exp(-rho i_s(x,y)) and reweighted.
struct ImportanceTilt {
  double rho = 0.0;
  double s = 1.0;
};

// Sample i is a pure function of (seed, i). The pairwise error probability
// of each sample is computed exactly from the distribution of the competing
// log-likelihood, built per output type by convolution over letters.
// Without a tilt, (x, y) is drawn from Q^n W^n.
// Throws NumericError if that distribution exceeds max_support points.
OracleResult monte_carlo_rcu(const ChannelModel& channel, std::int64_t n, double logM, std::int64_t samples,
                             std::uint64_t seed, std::optional<ImportanceTilt> tilt = std::nullopt,
                             std::size_t max_support = kMonteCarloMaxSupport);

}  // namespace rcu
