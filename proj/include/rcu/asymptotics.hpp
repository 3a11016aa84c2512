#pragma once

#include "rcu/channel.hpp"
#include "rcu/errors.hpp"
#include "rcu/exponent.hpp"
#include "rcu/saddlepoint.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string_view>

namespace rcu {

enum class Regime { below_critical, at_critical, between, at_Is, above_Is };

std::string_view to_string(Regime regime);

inline constexpr double kRegimeBand = 1e-9;         // nats
inline constexpr double kBoundaryRhoGuard = 1e-3;   // between-regime refusal band
inline constexpr double kRateTolerance = 1e-9;      // nats, rate inversion bracket

// Raised when the between-regime expansion is requested with rho_hat within
// kBoundaryRhoGuard of 0 or 1, where it diverges.
class DivergentRegimeError : public NumericError {
 public:
  using NumericError::NumericError;
};

// Partition by R_cr^s(Q) and I_s(Q) with an equality band of kRegimeBand.
Regime classify_regime(const DensityTable& table, double rate);
Regime classify_regime(const ChannelModel& channel, double rate, double s);

// Fixed-rate limit form of beta_n. `lattice` is the lattice structure of
// R - i_s(X,Y); the between regime uses the lattice form when it has a
// positive span and the non-lattice form otherwise.
double exact_asymptotics_prefactor(const TiltingSolution& sol, std::int64_t n, const LatticeInfo& lattice, Regime regime);

ApproxResult exact_asymptotics_approx(const ChannelModel& channel, std::int64_t n, double rate, SPolicy s = std::nullopt);

// n I_s - sqrt(n U_s) Q^{-1}(eps) [+ log(n)/2], with the O(1) term set to 0.
double normal_approx_logM(const ChannelModel& channel, std::int64_t n, double epsilon, double s, bool include_half_log_n);

// Inverse of normal_approx_logM at a given rate: log Q((n I_s [+ log(n)/2] - n R) / sqrt(n U_s)).
ApproxResult normal_approx(const ChannelModel& channel, std::int64_t n, double rate, double s, bool include_half_log_n);

// exp(-n Er(R)) with unit prefactor.
ApproxResult error_exponent_approx(const ChannelModel& channel, std::int64_t n, double rate);

enum class ApproxMethod { saddlepoint, exact_asymptotics, normal, normal_no_half_log, exponent };

std::string_view to_string(ApproxMethod method);
std::optional<ApproxMethod> parse_approx_method(std::string_view name);

// Evaluates `method` at one rate. The normal methods default to s = 1, all
// others to the self-consistent s.
ApproxResult evaluate_approx(const ChannelModel& channel, std::int64_t n, double rate, ApproxMethod method, SPolicy s = std::nullopt);

// Bisection for the rate in [lo, hi] where log_value(rate) crosses log_eps,
// to kRateTolerance. log_value must be increasing in rate at the crossing;
// a DivergentRegimeError from log_value counts as +infinity.
// Throws NumericError when the bracket has no sign change.
double invert_rate(const std::function<double(double)>& log_value, double log_eps, double lo, double hi);

// Rate (nats/use) at which `method` equals epsilon, searched over
// [0, log |X|]; the normal methods are inverted in closed form.
double rate_for_epsilon(const ChannelModel& channel, std::int64_t n, double epsilon, ApproxMethod method,
                        SPolicy s = std::nullopt);

}  // namespace rcu
