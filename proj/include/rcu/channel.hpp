#pragma once

#include <Eigen/Core>

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rcu {

// Discrete memoryless channel W(y|x) together with an i.i.d. input
// distribution Q. Rows of W are indexed by input, columns by output.
// Immutable once constructed; construction validates every invariant.
class ChannelModel {
 public:
  // Throws InputError if W is not row-stochastic, Q is not a distribution,
  // or Q x W has empty support. Entries below 1e-300 are flushed to zero.
  ChannelModel(Eigen::MatrixXd W, Eigen::VectorXd Q);

  Eigen::Index input_size() const { return W_.rows(); }
  Eigen::Index output_size() const { return W_.cols(); }

  const Eigen::MatrixXd& W() const { return W_; }
  const Eigen::VectorXd& Q() const { return Q_; }

  // Q(x) W(y|x) as an input_size x output_size matrix.
  Eigen::MatrixXd joint() const { return Q_.asDiagonal() * W_; }
  // Output marginal sum_x Q(x) W(y|x).
  Eigen::VectorXd output_marginal() const { return W_.transpose() * Q_; }

 private:
  Eigen::MatrixXd W_;
  Eigen::VectorXd Q_;
};

inline constexpr double kStochasticTolerance = 1e-12;
inline constexpr double kZeroFlush = 1e-300;

// Parses the line-oriented channel format:
//   X <input_size>
//   Y <output_size>
//   Q <q_1> ... <q_X>
//   W <w_{x,1}> ... <w_{x,Y}>      (input_size lines, in input order)
// Lines whose first non-blank character is '#' are comments. Diagnostics
// are prefixed with "<source>:<line>:".
ChannelModel parse_channel_spec(std::string_view text, std::string_view source = "<input>");

// Round-trips through parse_channel_spec bit-exactly (shortest
// round-trip decimal representation of every entry).
std::string serialize_channel_spec(const ChannelModel& channel);

// Binary symmetric channel with crossover delta in (0, 0.5) and uniform Q.
ChannelModel builtin_bsc(double delta);

// "bsc:<delta>" or a path to a channel file.
ChannelModel load_channel(const std::string& source);

// Crossover probability if the model is a BSC with uniform input, else empty.
std::optional<double> bsc_crossover(const ChannelModel& channel);

struct SingularityReport {
  std::vector<Eigen::Index> y1_set;
  bool is_singular = false;
};

// Outputs y for which two inputs x, x' with Q(x)Q(x')W(y|x)W(y|x') > 0 have
// W(y|x) != W(y|x'). Compared exactly, not within a tolerance.
SingularityReport singularity_report(const ChannelModel& channel);

}  // namespace rcu
