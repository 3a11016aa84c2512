#include "rcu/info_measures.hpp"

#include "rcu/errors.hpp"
#include "rcu/log_math.hpp"

#include <cmath>
#include <string>

namespace rcu {

namespace {

void require_positive_s(double s) {
  if (!(s > 0.0) || !std::isfinite(s)) throw InputError("s must be a positive real, got " + std::to_string(s));
}

void require_unit_rho(double rho) {
  if (!(rho >= 0.0 && rho <= 1.0)) throw InputError("rho must lie in [0,1], got " + std::to_string(rho));
}

// Two-pass weighted mean and variance.
MomentPair weighted_moments(const Eigen::ArrayXd& w, const Eigen::ArrayXd& v) {
  MomentPair m;
  m.mean = (w * v).sum();
  m.variance = (w * (v - m.mean).square()).sum();
  return m;
}

}  // namespace

DensityTable information_density(const ChannelModel& channel, double s) {
  require_positive_s(s);
  const auto& W = channel.W();
  const auto& Q = channel.Q();
  const Eigen::Index nx = channel.input_size();
  const Eigen::Index ny = channel.output_size();

  // log sum_x Q(x) W(y|x)^s per output, over the support only.
  Eigen::ArrayXd log_denom = Eigen::ArrayXd::Constant(ny, kNegInf);
  for (Eigen::Index y = 0; y < ny; ++y) {
    LogAccumulator acc;
    for (Eigen::Index x = 0; x < nx; ++x) {
      if (Q(x) > 0.0 && W(x, y) > 0.0) acc.add(std::log(Q(x)) + s * std::log(W(x, y)));
    }
    log_denom(y) = acc.value();
  }

  const Eigen::Index support = (channel.joint().array() > 0.0).count();
  DensityTable t;
  t.s = s;
  t.x.resize(support);
  t.y.resize(support);
  t.prob.resize(support);
  t.log_prob.resize(support);
  t.log_input.resize(support);
  t.value.resize(support);

  Eigen::Index k = 0;
  for (Eigen::Index x = 0; x < nx; ++x) {
    for (Eigen::Index y = 0; y < ny; ++y) {
      if (!(Q(x) > 0.0 && W(x, y) > 0.0)) continue;
      const double log_w = std::log(W(x, y));
      t.x(k) = static_cast<int>(x);
      t.y(k) = static_cast<int>(y);
      t.log_input(k) = std::log(Q(x));
      t.log_prob(k) = t.log_input(k) + log_w;
      t.prob(k) = Q(x) * W(x, y);
      t.value(k) = s * log_w - log_denom(y);
      ++k;
    }
  }
  return t;
}

MomentPair density_moments(const DensityTable& table) {
  return weighted_moments(table.prob / table.prob.sum(), table.value);
}

Eigen::ArrayXd tilted_weights(const DensityTable& table, double rho) {
  const Eigen::ArrayXd l = table.log_prob - rho * table.value;
  return (l - log_sum_exp(l)).exp();
}

double e0(const DensityTable& table, double rho) {
  if (rho == 0.0) return 0.0;
  const Eigen::ArrayXd l = table.log_prob - rho * table.value;
  return log_sum_exp(table.log_prob) - log_sum_exp(l);
}

double e0(const ChannelModel& channel, double rho, double s) {
  require_unit_rho(rho);
  return e0(information_density(channel, s), rho);
}

E0Derivatives e0_derivatives(const DensityTable& table, double rho) {
  const MomentPair m = weighted_moments(tilted_weights(table, rho), table.value);
  return {m.mean, -m.variance};
}

E0Derivatives e0_derivatives(const ChannelModel& channel, double rho, double s) {
  require_unit_rho(rho);
  return e0_derivatives(information_density(channel, s), rho);
}

TiltedJoint tilted_joint(const ChannelModel& channel, double rho, double s) {
  require_unit_rho(rho);
  const DensityTable table = information_density(channel, s);
  const Eigen::ArrayXd w = tilted_weights(table, rho);
  TiltedJoint out;
  out.rho = rho;
  out.s = s;
  out.probabilities = Eigen::MatrixXd::Zero(channel.input_size(), channel.output_size());
  for (Eigen::Index k = 0; k < table.size(); ++k) out.probabilities(table.x(k), table.y(k)) = w(k);
  return out;
}

ReverseConditional reverse_conditional(const ChannelModel& channel, double s) {
  const DensityTable table = information_density(channel, s);
  ReverseConditional out;
  out.s = s;
  out.probabilities = Eigen::MatrixXd::Zero(channel.input_size(), channel.output_size());
  out.has_mass = channel.output_marginal().array() > 0.0;
  // P~_s(x|y) = Q(x) exp(i_s(x,y)).
  for (Eigen::Index k = 0; k < table.size(); ++k) {
    out.probabilities(table.x(k), table.y(k)) = std::exp(table.log_input(k) + table.value(k));
  }
  for (Eigen::Index y = 0; y < out.probabilities.cols(); ++y) {
    const double total = out.probabilities.col(y).sum();
    if (total > 0.0) out.probabilities.col(y) /= total;
  }
  return out;
}

double conditional_variance_c3(const DensityTable& table, double rho_hat) {
  const Eigen::ArrayXd w = tilted_weights(table, rho_hat);
  const int ny = table.size() == 0 ? 0 : table.y.maxCoeff() + 1;

  double c3 = 0.0;
  for (int y = 0; y < ny; ++y) {
    double py = 0.0;
    std::vector<Eigen::Index> idx;
    for (Eigen::Index k = 0; k < table.size(); ++k) {
      if (table.y(k) != y) continue;
      py += w(k);
      idx.push_back(k);
    }
    if (idx.size() < 2 || py == 0.0) continue;

    Eigen::ArrayXd post(idx.size()), vals(idx.size());
    for (std::size_t j = 0; j < idx.size(); ++j) {
      post(j) = table.log_input(idx[j]) + table.value(idx[j]);
      vals(j) = table.value(idx[j]);
    }
    post = (post - log_sum_exp(post)).exp();
    c3 += py * weighted_moments(post, vals).variance;
  }
  return c3;
}

double conditional_variance_c3(const ChannelModel& channel, double rho_hat, double s) {
  require_unit_rho(rho_hat);
  return conditional_variance_c3(information_density(channel, s), rho_hat);
}

double lattice_correction(double span) {
  if (span < 1e-8) return 1.0 + 0.5 * span;
  return span / -std::expm1(-span);
}

PsiResult psi_s(const ChannelModel& channel, double s) {
  const SingularityReport sing = singularity_report(channel);
  if (sing.is_singular) throw SingularChannelError("singular pair: Y1(Q) is empty, psi_s undefined");

  const DensityTable table = information_density(channel, s);
  Eigen::Array<bool, Eigen::Dynamic, 1> in_y1 = Eigen::Array<bool, Eigen::Dynamic, 1>::Constant(channel.output_size(), false);
  for (Eigen::Index y : sing.y1_set) in_y1(y) = true;

  std::vector<double> set;
  for (Eigen::Index k = 0; k < table.size(); ++k) {
    if (in_y1(table.y(k))) set.push_back(table.value(k));
  }

  PsiResult out;
  out.lattice = detect_lattice(set);
  out.psi = out.lattice.is_lattice && out.lattice.span > 0.0 ? lattice_correction(out.lattice.span) : 1.0;
  return out;
}

double mutual_information(const ChannelModel& channel) {
  const Eigen::VectorXd py = channel.output_marginal();
  double mi = 0.0;
  for (Eigen::Index x = 0; x < channel.input_size(); ++x) {
    for (Eigen::Index y = 0; y < channel.output_size(); ++y) {
      const double p = channel.Q()(x) * channel.W()(x, y);
      if (p > 0.0) mi += p * std::log(channel.W()(x, y) / py(y));
    }
  }
  return mi;
}

}  // namespace rcu
