#pragma once

#include "rcu/channel.hpp"
#include "rcu/info_measures.hpp"
#include "rcu/lattice.hpp"

#include <optional>

namespace rcu {

// Fixed s, or nullopt for the self-consistent choice s = 1/(1 + rho_hat).
using SPolicy = std::optional<double>;

inline constexpr double kRhoTolerance = 1e-12;
inline constexpr double kFixedPointTolerance = 1e-10;
inline constexpr int kFixedPointMaxIterations = 100;
// U_s at or below this is treated as zero (rounding noise on degenerate channels).
inline constexpr double kDegenerateVariance = 1e-20;

// Everything the saddlepoint prefactor needs at one (Q, W, R, s).
struct TiltingSolution {
  double s = 1.0;
  double rho_hat = 0.0;
  double e0_at_rho_hat = 0.0;
  double c1 = 0.0;
  double c2 = 0.0;
  double c3 = 0.0;
  double psi_s = 1.0;
  double rate = 0.0;  // nats/use
  LatticeInfo psi_lattice;

  // E0(Q, rho_hat, s) - rho_hat R.
  double exponent() const { return e0_at_rho_hat - rho_hat * rate; }
};

struct C1C2 {
  double c1 = 0.0;
  double c2 = 0.0;
};

struct ExponentResult {
  double er = 0.0;  // nats
  double rho_star = 0.0;
  double s_star = 1.0;
};

// argmax_{rho in [0,1]} E0(rho) - rho R. Bisection on the monotone
// derivative with a Newton polish. Ties at R = R_cr give 1, at R = I_s give 0.
// Throws NumericError if E0 is linear in rho (U_s = 0).
double rho_hat(const DensityTable& table, double rate);
double rho_hat(const ChannelModel& channel, double rate, double s);

C1C2 c1_c2(const DensityTable& table, double rate);
C1C2 c1_c2(const ChannelModel& channel, double rate, double s);

// dE0/drho at rho = 1.
double critical_rate(const ChannelModel& channel, double s);

// Fixed point of s = 1/(1 + rho_hat(s)) in [1/2, 1]. Iterates directly,
// damps on oscillation, and falls back to bisection on the residual.
double select_s(const ChannelModel& channel, double rate);

// sup_{s > 0, rho in [0,1]} E0(rho, s) - rho R via the select_s fixed point,
// with a golden-section search over s in (0, 2] as fallback.
ExponentResult random_coding_exponent(const ChannelModel& channel, double rate);

// Throws SingularChannelError for singular pairs.
TiltingSolution tilting_solution(const ChannelModel& channel, double rate, SPolicy s = std::nullopt);

}  // namespace rcu
