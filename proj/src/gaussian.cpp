#include "rcu/gaussian.hpp"

#include "rcu/errors.hpp"
#include "rcu/log_math.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace rcu {

namespace {

constexpr double kTailSwitch = 8.0;
constexpr int kMillsDepth = 80;
const double kLogSqrt2Pi = 0.5 * std::log(2.0 * std::numbers::pi);

// Mills ratio Q(x)/phi(x) for large positive x:
// 1/(x + 1/(x + 2/(x + 3/(x + ...)))), evaluated backwards.
double mills_ratio(double x) {
  double t = x;
  for (int k = kMillsDepth; k >= 1; --k) t = x + k / t;
  return 1.0 / t;
}

}  // namespace

double gaussian_q(double x) { return 0.5 * std::erfc(x / std::numbers::sqrt2); }

double log_gaussian_q(double x) {
  if (std::isnan(x)) return x;
  if (x > kTailSwitch) return -0.5 * x * x - kLogSqrt2Pi + std::log(mills_ratio(x));
  if (x < -kTailSwitch) return std::log1p(-std::exp(log_gaussian_q(-x)));
  return std::log(gaussian_q(x));
}

double gaussian_q_inverse(double p) {
  if (!(p > 0.0 && p < 1.0)) throw InputError("Q^{-1} requires p in (0,1), got " + std::to_string(p));
  if (p == 0.5) return 0.0;
  if (p > 0.5) return -gaussian_q_inverse(1.0 - p);

  // Q is decreasing; the root of log Q(x) - log p lies in (0, 40).
  const double target = std::log(p);
  double lo = 0.0, hi = 40.0;
  double x = std::sqrt(-2.0 * target);
  for (int i = 0; i < 200; ++i) {
    const double g = log_gaussian_q(x) - target;
    if (g > 0.0) {
      lo = x;
    } else {
      hi = x;
    }
    // d/dx log Q(x) = -phi(x)/Q(x)
    const double dg = -std::exp(-0.5 * x * x - kLogSqrt2Pi - log_gaussian_q(x));
    double next = x - g / dg;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    const double step = std::abs(next - x);
    x = next;
    if (step <= 1e-12 * std::max(1.0, std::abs(x)) || hi - lo <= 1e-12) break;
  }
  return x;
}

double log_exp_gauss_integral(double a, double b, double mu, double sigma2) {
  if (!(sigma2 > 0.0)) throw InputError("Gaussian integral requires sigma2 > 0");
  const double sigma = std::sqrt(sigma2);
  return mu * b + 0.5 * sigma2 * b * b + log_gaussian_q((a - mu - b * sigma2) / sigma);
}

double exp_gauss_integral(double a, double b, double mu, double sigma2) {
  return std::exp(log_exp_gauss_integral(a, b, mu, sigma2));
}

double log_exp_gauss_integral_below(double a, double b, double mu, double sigma2) {
  if (!(sigma2 > 0.0)) throw InputError("Gaussian integral requires sigma2 > 0");
  const double sigma = std::sqrt(sigma2);
  return mu * b + 0.5 * sigma2 * b * b + log_gaussian_q(-(a - mu - b * sigma2) / sigma);
}

}  // namespace rcu
