#pragma once

namespace rcu {

// Upper tail of the standard normal, Q(x) = P[N(0,1) > x].
double gaussian_q(double x);

// log Q(x) without underflow; a continued-fraction Mills ratio is used for
// x > 8 and log1p(-Q(-x)) for x < -8.
double log_gaussian_q(double x);

// Q^{-1}(p) for p in (0,1) by bracketed Newton iteration on log Q.
double gaussian_q_inverse(double p);

// log of  int_a^inf e^{b z} phi(z; mu, sigma2) dz
//       = mu b + sigma2 b^2 / 2 + log Q((a - mu - b sigma2) / sigma).
double log_exp_gauss_integral(double a, double b, double mu, double sigma2);
double exp_gauss_integral(double a, double b, double mu, double sigma2);

// log of  int_{-inf}^a e^{b z} phi(z; mu, sigma2) dz, the complementary piece.
double log_exp_gauss_integral_below(double a, double b, double mu, double sigma2);

}  // namespace rcu
