#include "rcu/exponent.hpp"

#include "rcu/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace rcu {

namespace {


void require_rate(double rate) {
  if (!(rate >= 0.0) || !std::isfinite(rate)) throw InputError("rate must be a nonnegative real, got " + std::to_string(rate));
}

}  // namespace

double rho_hat(const DensityTable& table, double rate) {
  const E0Derivatives at0 = e0_derivatives(table, 0.0);
  if (-at0.second <= kDegenerateVariance) throw NumericError("degenerate channel: E0 is linear in rho (U_s = 0)");

  if (e0_derivatives(table, 1.0).first >= rate) return 1.0;
  if (at0.first <= rate) return 0.0;

  double lo = 0.0, hi = 1.0;
  while (hi - lo > kRhoTolerance) {
    const double mid = 0.5 * (lo + hi);
    if (e0_derivatives(table, mid).first > rate) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  double rho = 0.5 * (lo + hi);
  for (int i = 0; i < 3; ++i) {
    const E0Derivatives d = e0_derivatives(table, rho);
    if (d.second >= 0.0) break;
    const double next = rho - (d.first - rate) / d.second;
    if (!(next >= lo - kRhoTolerance && next <= hi + kRhoTolerance)) break;
    rho = next;
  }
  return std::clamp(rho, 0.0, 1.0);
}

double rho_hat(const ChannelModel& channel, double rate, double s) {
  require_rate(rate);
  return rho_hat(information_density(channel, s), rate);
}

C1C2 c1_c2(const DensityTable& table, double rate) {
  const double rho = rho_hat(table, rate);
  const E0Derivatives d = e0_derivatives(table, rho);
  return {rate - d.first, -d.second};
}

C1C2 c1_c2(const ChannelModel& channel, double rate, double s) {
  require_rate(rate);
  return c1_c2(information_density(channel, s), rate);
}

double critical_rate(const ChannelModel& channel, double s) {
  return e0_derivatives(information_density(channel, s), 1.0).first;
}

double select_s(const ChannelModel& channel, double rate) {
  require_rate(rate);
  auto target = [&](double s) { return 1.0 / (1.0 + rho_hat(information_density(channel, s), rate)); };

  double s = 1.0;
  double prev_step = 0.0;
  bool damped = false;
  for (int k = 0; k < kFixedPointMaxIterations; ++k) {
    const double t = target(s);
    const double step = t - s;
    if (std::abs(step) <= kFixedPointTolerance) return t;
    if (prev_step * step < 0.0 && std::abs(step) > 0.5 * std::abs(prev_step)) damped = true;
    s = damped ? s + 0.5 * step : t;
    prev_step = step;
  }

  // Residual s - target(s) is <= 0 at 1/2 and >= 0 at 1.
  double lo = 0.5, hi = 1.0;
  if (lo - target(lo) > 0.0 || hi - target(hi) < 0.0) {
    throw NumericError("select_s: fixed point not bracketed in [1/2, 1]");
  }
  while (hi - lo > kRhoTolerance) {
    const double mid = 0.5 * (lo + hi);
    if (mid - target(mid) < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return target(0.5 * (lo + hi));
}

namespace {

ExponentResult exponent_at(const ChannelModel& channel, double rate, double s) {
  const DensityTable table = information_density(channel, s);
  const double rho = rho_hat(table, rate);
  return {e0(table, rho) - rho * rate, rho, s};
}

ExponentResult golden_section_exponent(const ChannelModel& channel, double rate) {
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = 1e-6, b = 2.0;
  double c = b - invphi * (b - a), d = a + invphi * (b - a);
  ExponentResult fc = exponent_at(channel, rate, c), fd = exponent_at(channel, rate, d);
  for (int i = 0; i < 200 && b - a > kFixedPointTolerance; ++i) {
    if (fc.er > fd.er) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = exponent_at(channel, rate, c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = exponent_at(channel, rate, d);
    }
  }
  ExponentResult best = fc.er > fd.er ? fc : fd;
  if (!std::isfinite(best.er)) throw NumericError("random_coding_exponent: golden-section search did not converge");
  return best;
}

}  // namespace

ExponentResult random_coding_exponent(const ChannelModel& channel, double rate) {
  require_rate(rate);
  try {
    return exponent_at(channel, rate, select_s(channel, rate));
  } catch (const NumericError&) {
    return golden_section_exponent(channel, rate);
  }
}

TiltingSolution tilting_solution(const ChannelModel& channel, double rate, SPolicy s) {
  require_rate(rate);
  if (singularity_report(channel).is_singular) throw SingularChannelError("singular pair: saddlepoint quantities undefined");

  TiltingSolution sol;
  sol.rate = rate;
  sol.s = s ? *s : select_s(channel, rate);
  const DensityTable table = information_density(channel, sol.s);
  sol.rho_hat = rho_hat(table, rate);
  sol.e0_at_rho_hat = e0(table, sol.rho_hat);
  const E0Derivatives d = e0_derivatives(table, sol.rho_hat);
  sol.c1 = rate - d.first;
  sol.c2 = -d.second;
  sol.c3 = conditional_variance_c3(table, sol.rho_hat);
  const PsiResult psi = psi_s(channel, sol.s);
  sol.psi_s = psi.psi;
  sol.psi_lattice = psi.lattice;
  if (!(sol.c2 > 0.0) || !(sol.c3 > 0.0)) throw NumericError("degenerate tilting solution (c2 or c3 not positive)");
  return sol;
}

}  // namespace rcu
