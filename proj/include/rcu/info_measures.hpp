#pragma once

#include "rcu/channel.hpp"
#include "rcu/lattice.hpp"

#include <Eigen/Core>

#include <vector>

namespace rcu {

// Generalized information density
//   i_s(x,y) = log W(y|x)^s - log sum_x' Q(x') W(y|x')^s
// tabulated over the support of Q x W. Entry k has joint probability
// prob(k) = Q(x)W(y|x) and density value(k), both in nats.
struct DensityTable {
  double s = 1.0;
  Eigen::ArrayXi x;
  Eigen::ArrayXi y;
  Eigen::ArrayXd prob;
  Eigen::ArrayXd log_prob;
  Eigen::ArrayXd log_input;  // log Q(x)
  Eigen::ArrayXd value;

  Eigen::Index size() const { return prob.size(); }
};

struct MomentPair {
  double mean = 0.0;      // I_s(Q)
  double variance = 0.0;  // U_s(Q)
};

struct E0Derivatives {
  double first = 0.0;   // dE0/drho, the tilted mean of i_s
  double second = 0.0;  // d2E0/drho2, minus the tilted variance of i_s
};

struct TiltedJoint {
  Eigen::MatrixXd probabilities;  // input_size x output_size
  double rho = 0.0;
  double s = 1.0;

  Eigen::VectorXd output_marginal() const { return probabilities.colwise().sum().transpose(); }
};

// Column y holds the posterior Q(x)W(y|x)^s / sum_x' Q(x')W(y|x')^s; columns
// with zero output mass are all zero and flagged in has_mass.
struct ReverseConditional {
  Eigen::MatrixXd probabilities;
  Eigen::Array<bool, Eigen::Dynamic, 1> has_mass;
  double s = 1.0;
};

struct PsiResult {
  double psi = 1.0;
  LatticeInfo lattice;  // of the set I_s restricted to y in Y1(Q)
};

DensityTable information_density(const ChannelModel& channel, double s);

MomentPair density_moments(const DensityTable& table);

// E0 = -log E[exp(-rho i_s)]. The table overloads accept any finite rho;
// the channel overloads require rho in [0,1].
double e0(const DensityTable& table, double rho);
double e0(const ChannelModel& channel, double rho, double s);

E0Derivatives e0_derivatives(const DensityTable& table, double rho);
E0Derivatives e0_derivatives(const ChannelModel& channel, double rho, double s);

// Normalized weights proportional to prob * exp(-rho * value).
Eigen::ArrayXd tilted_weights(const DensityTable& table, double rho);

TiltedJoint tilted_joint(const ChannelModel& channel, double rho, double s);

ReverseConditional reverse_conditional(const ChannelModel& channel, double s);

// E over the tilted y-marginal of Var[i_s(X,y)] under the reverse
// conditional. Zero exactly when the pair is singular.
double conditional_variance_c3(const ChannelModel& channel, double rho_hat, double s);
double conditional_variance_c3(const DensityTable& table, double rho_hat);

// h / (1 - e^{-h}), continuous at h = 0 with value 1.
double lattice_correction(double span);

// psi_s = 1 if I_s is non-lattice, else lattice_correction(span).
// Throws SingularChannelError when Y1(Q) is empty.
PsiResult psi_s(const ChannelModel& channel, double s);

// Mutual information I(X;Y) from Q x W, independent of the tables above.
double mutual_information(const ChannelModel& channel);

}  // namespace rcu
