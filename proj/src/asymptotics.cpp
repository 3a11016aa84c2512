#include "rcu/asymptotics.hpp"

#include "rcu/gaussian.hpp"
#include "rcu/info_measures.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace rcu {

std::string_view to_string(Regime regime) {
  switch (regime) {
    case Regime::below_critical: return "below_critical";
    case Regime::at_critical: return "at_critical";
    case Regime::between: return "between";
    case Regime::at_Is: return "at_Is";
    case Regime::above_Is: return "above_Is";
  }
  return "unknown";
}

Regime classify_regime(const DensityTable& table, double rate) {
  const double r_cr = e0_derivatives(table, 1.0).first;
  const double i_s = e0_derivatives(table, 0.0).first;
  if (std::abs(rate - r_cr) <= kRegimeBand) return Regime::at_critical;
  if (std::abs(rate - i_s) <= kRegimeBand) return Regime::at_Is;
  if (rate < r_cr) return Regime::below_critical;
  if (rate > i_s) return Regime::above_Is;
  return Regime::between;
}

Regime classify_regime(const ChannelModel& channel, double rate, double s) {
  return classify_regime(information_density(channel, s), rate);
}

double exact_asymptotics_prefactor(const TiltingSolution& sol, std::int64_t n, const LatticeInfo& lattice, Regime regime) {
  const double t = prefactor_threshold(sol, n);
  switch (regime) {
    case Regime::below_critical: return std::exp(-t);
    case Regime::at_critical: return 0.5 * std::exp(-t);
    case Regime::at_Is: return 0.5;
    case Regime::above_Is: return 1.0;
    case Regime::between: break;
  }

  const double rho = sol.rho_hat;
  if (rho < kBoundaryRhoGuard || 1.0 - rho < kBoundaryRhoGuard) {
    throw DivergentRegimeError("exact asymptotics diverge next to the adjacent regime (rho_hat = " + std::to_string(rho) + ")");
  }
  const double scale = std::exp(-rho * t) / std::sqrt(2.0 * std::numbers::pi * static_cast<double>(n) * sol.c2);
  if (!lattice.is_lattice || !(lattice.span > 0.0)) return scale / (rho * (1.0 - rho));

  const LatticeGrid grid = lattice_grid(sol, n, lattice);
  const double h = grid.h;
  const double phase = grid.phase();
  const double up = std::exp(-rho * phase) / -std::expm1(-rho * h);
  const double dn = std::exp((1.0 - rho) * phase) * std::exp(-(1.0 - rho) * h) / -std::expm1(-(1.0 - rho) * h);
  return scale * h * (up + dn);
}

ApproxResult exact_asymptotics_approx(const ChannelModel& channel, std::int64_t n, double rate, SPolicy s) {
  ApproxResult r;
  r.n = n;
  r.rate = rate;
  r.method = "exact_asymptotics";
  r.solution = tilting_solution(channel, rate, s);
  r.support_lattice = support_lattice(channel, r.solution.s, rate);
  r.lattice_branch = r.support_lattice.is_lattice && r.support_lattice.span > 0.0;
  const Regime regime = classify_regime(channel, rate, r.solution.s);
  r.prefactor = exact_asymptotics_prefactor(r.solution, n, r.support_lattice, regime);
  r.log_prefactor = std::log(r.prefactor);
  r.exponent = r.solution.exponent();
  r.log_value = r.log_prefactor - static_cast<double>(n) * r.exponent;
  return r;
}

double normal_approx_logM(const ChannelModel& channel, std::int64_t n, double epsilon, double s, bool include_half_log_n) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw InputError("epsilon must lie in (0,1)");
  if (n < 1) throw InputError("block length n must be positive");
  const MomentPair m = density_moments(information_density(channel, s));
  if (!(m.variance > kDegenerateVariance)) throw NumericError("normal approximation requires U_s > 0");
  const double nd = static_cast<double>(n);
  double log_m = nd * m.mean - std::sqrt(nd * m.variance) * gaussian_q_inverse(epsilon);
  if (include_half_log_n) log_m += 0.5 * std::log(nd);
  return log_m;
}

ApproxResult normal_approx(const ChannelModel& channel, std::int64_t n, double rate, double s, bool include_half_log_n) {
  if (n < 1) throw InputError("block length n must be positive");
  const MomentPair m = density_moments(information_density(channel, s));
  if (!(m.variance > kDegenerateVariance)) throw NumericError("normal approximation requires U_s > 0");
  const double nd = static_cast<double>(n);
  double centre = nd * m.mean - nd * rate;
  if (include_half_log_n) centre += 0.5 * std::log(nd);

  ApproxResult r;
  r.n = n;
  r.rate = rate;
  r.method = include_half_log_n ? "normal" : "normal_no_half_log";
  r.solution.s = s;
  r.solution.rate = rate;
  r.log_value = log_gaussian_q(centre / std::sqrt(nd * m.variance));
  r.log_prefactor = r.log_value;
  r.prefactor = std::exp(r.log_value);
  r.exponent = 0.0;
  return r;
}

ApproxResult error_exponent_approx(const ChannelModel& channel, std::int64_t n, double rate) {
  if (n < 1) throw InputError("block length n must be positive");
  const ExponentResult er = random_coding_exponent(channel, rate);
  ApproxResult r;
  r.n = n;
  r.rate = rate;
  r.method = "exponent";
  r.solution.s = er.s_star;
  r.solution.rho_hat = er.rho_star;
  r.solution.rate = rate;
  r.solution.e0_at_rho_hat = er.er + er.rho_star * rate;
  r.exponent = er.er;
  r.log_prefactor = 0.0;
  r.prefactor = 1.0;
  r.log_value = -static_cast<double>(n) * er.er;
  return r;
}

std::string_view to_string(ApproxMethod method) {
  switch (method) {
    case ApproxMethod::saddlepoint: return "saddlepoint";
    case ApproxMethod::exact_asymptotics: return "exact_asymptotics";
    case ApproxMethod::normal: return "normal";
    case ApproxMethod::normal_no_half_log: return "normal_no_half_log";
    case ApproxMethod::exponent: return "exponent";
  }
  return "unknown";
}

std::optional<ApproxMethod> parse_approx_method(std::string_view name) {
  for (auto m : {ApproxMethod::saddlepoint, ApproxMethod::exact_asymptotics, ApproxMethod::normal,
                 ApproxMethod::normal_no_half_log, ApproxMethod::exponent}) {
    if (to_string(m) == name) return m;
  }
  return std::nullopt;
}

ApproxResult evaluate_approx(const ChannelModel& channel, std::int64_t n, double rate, ApproxMethod method, SPolicy s) {
  switch (method) {
    case ApproxMethod::saddlepoint: return saddlepoint_approx(channel, n, rate, s);
    case ApproxMethod::exact_asymptotics: return exact_asymptotics_approx(channel, n, rate, s);
    case ApproxMethod::normal: return normal_approx(channel, n, rate, s.value_or(1.0), true);
    case ApproxMethod::normal_no_half_log: return normal_approx(channel, n, rate, s.value_or(1.0), false);
    case ApproxMethod::exponent: return error_exponent_approx(channel, n, rate);
  }
  throw InputError("unknown approximation method");
}

double invert_rate(const std::function<double(double)>& log_value, double log_eps, double lo, double hi) {
  auto f = [&](double rate) {
    try {
      return log_value(rate) - log_eps;
    } catch (const DivergentRegimeError&) {
      return std::numeric_limits<double>::infinity();
    }
  };
  const double f_lo = f(lo), f_hi = f(hi);
  if (f_lo > 0.0) throw NumericError("target unreachable: value exceeds epsilon at the lowest rate");
  if (f_hi < 0.0) throw NumericError("target unreachable: value stays below epsilon at the highest rate");
  while (hi - lo > kRateTolerance) {
    const double mid = 0.5 * (lo + hi);
    if (f(mid) > 0.0) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double rate_for_epsilon(const ChannelModel& channel, std::int64_t n, double epsilon, ApproxMethod method, SPolicy s) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw InputError("epsilon must lie in (0,1)");
  if (n < 1) throw InputError("block length n must be positive");
  const double nd = static_cast<double>(n);
  if (method == ApproxMethod::normal || method == ApproxMethod::normal_no_half_log) {
    return normal_approx_logM(channel, n, epsilon, s.value_or(1.0), method == ApproxMethod::normal) / nd;
  }
  const double max_rate = std::log(static_cast<double>(channel.input_size()));
  return invert_rate([&](double rate) { return evaluate_approx(channel, n, rate, method, s).log_value; },
                     std::log(epsilon), 0.0, max_rate);
}

}  // namespace rcu
