#include "rcu/channel.hpp"

#include "rcu/errors.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace rcu {

namespace {

std::string fmt_double(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, end);
}

void flush_tiny(Eigen::Ref<Eigen::MatrixXd> m) {
  m = (m.array() < kZeroFlush).select(0.0, m);
}

}  // namespace

ChannelModel::ChannelModel(Eigen::MatrixXd W, Eigen::VectorXd Q) : W_(std::move(W)), Q_(std::move(Q)) {
  if (W_.rows() == 0 || W_.cols() == 0) throw InputError("channel must have non-empty alphabets");
  if (Q_.size() != W_.rows()) {
    throw InputError("Q has " + std::to_string(Q_.size()) + " entries but W has " +
                     std::to_string(W_.rows()) + " rows");
  }
  if (!W_.allFinite() || !Q_.allFinite()) throw InputError("channel entries must be finite");

  for (Eigen::Index x = 0; x < W_.rows(); ++x) {
    for (Eigen::Index y = 0; y < W_.cols(); ++y) {
      const double w = W_(x, y);
      if (w < 0.0 || w > 1.0) {
        throw InputError("W row " + std::to_string(x + 1) + " entry " + std::to_string(y + 1) +
                         " outside [0,1]");
      }
    }
    const double sum = W_.row(x).sum();
    if (std::abs(sum - 1.0) > kStochasticTolerance) {
      throw InputError("W row " + std::to_string(x + 1) + " not stochastic (sum " + fmt_double(sum) + ")");
    }
  }
  for (Eigen::Index x = 0; x < Q_.size(); ++x) {
    if (Q_(x) < 0.0 || Q_(x) > 1.0) throw InputError("Q entry " + std::to_string(x + 1) + " outside [0,1]");
  }
  if (std::abs(Q_.sum() - 1.0) > kStochasticTolerance) {
    throw InputError("Q not a probability vector (sum " + fmt_double(Q_.sum()) + ")");
  }

  flush_tiny(W_);
  flush_tiny(Q_);
  if ((joint().array() > 0.0).count() == 0) throw InputError("Q x W has empty support");
}

namespace {

struct LineReader {
  std::string_view source;
  std::size_t line_no = 0;

  [[noreturn]] void fail(const std::string& msg) const {
    throw InputError(std::string(source) + ":" + std::to_string(line_no) + ": " + msg);
  }

  double number(std::string_view tok) const {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size() || !std::isfinite(v)) {
      fail("malformed number '" + std::string(tok) + "'");
    }
    return v;
  }

  long count(std::string_view tok) const {
    long v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size() || v <= 0) {
      fail("expected a positive integer, got '" + std::string(tok) + "'");
    }
    return v;
  }
};

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

}  // namespace

ChannelModel parse_channel_spec(std::string_view text, std::string_view source) {
  LineReader rd{source};
  long nx = 0, ny = 0;
  std::optional<Eigen::VectorXd> q;
  std::vector<Eigen::RowVectorXd> rows;

  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++rd.line_no;

    auto toks = split_ws(line);
    if (toks.empty() || toks.front().front() == '#') continue;

    const std::string_view key = toks.front();
    const std::size_t nargs = toks.size() - 1;
    if (key == "X" || key == "Y") {
      if (nargs != 1) rd.fail("'" + std::string(key) + "' takes exactly one value");
      long& target = key == "X" ? nx : ny;
      if (target != 0) rd.fail("duplicate '" + std::string(key) + "' line");
      if (!rows.empty() || q) rd.fail("'" + std::string(key) + "' must precede Q and W");
      target = rd.count(toks[1]);
    } else if (key == "Q") {
      if (nx == 0 || ny == 0) rd.fail("Q before X and Y");
      if (q) rd.fail("duplicate 'Q' line");
      if (static_cast<long>(nargs) != nx) {
        rd.fail("dimension mismatch: Q has " + std::to_string(nargs) + " entries, expected " + std::to_string(nx));
      }
      q.emplace(nx);
      for (long i = 0; i < nx; ++i) (*q)(i) = rd.number(toks[i + 1]);
    } else if (key == "W") {
      if (nx == 0 || ny == 0) rd.fail("W before X and Y");
      if (static_cast<long>(rows.size()) == nx) rd.fail("more than " + std::to_string(nx) + " W rows");
      if (static_cast<long>(nargs) != ny) {
        rd.fail("dimension mismatch: W row has " + std::to_string(nargs) + " entries, expected " + std::to_string(ny));
      }
      Eigen::RowVectorXd r(ny);
      for (long i = 0; i < ny; ++i) r(i) = rd.number(toks[i + 1]);
      rows.push_back(std::move(r));
    } else {
      rd.fail("unknown record '" + std::string(key) + "'");
    }
  }

  const std::string where(source);
  if (nx == 0 || ny == 0) throw InputError(where + ": missing X or Y line");
  if (!q) throw InputError(where + ": missing Q line");
  if (static_cast<long>(rows.size()) != nx) {
    throw InputError(where + ": expected " + std::to_string(nx) + " W rows, found " + std::to_string(rows.size()));
  }
  Eigen::MatrixXd W(nx, ny);
  for (long x = 0; x < nx; ++x) W.row(x) = rows[x];
  try {
    return ChannelModel(std::move(W), std::move(*q));
  } catch (const InputError& e) {
    throw InputError(where + ": " + e.what());
  }
}

std::string serialize_channel_spec(const ChannelModel& channel) {
  std::ostringstream os;
  os << "X " << channel.input_size() << "\n";
  os << "Y " << channel.output_size() << "\n";
  os << "Q";
  for (Eigen::Index x = 0; x < channel.input_size(); ++x) os << ' ' << fmt_double(channel.Q()(x));
  os << "\n";
  for (Eigen::Index x = 0; x < channel.input_size(); ++x) {
    os << "W";
    for (Eigen::Index y = 0; y < channel.output_size(); ++y) os << ' ' << fmt_double(channel.W()(x, y));
    os << "\n";
  }
  return os.str();
}

ChannelModel builtin_bsc(double delta) {
  if (!(delta > 0.0 && delta < 0.5)) throw InputError("BSC crossover must lie in (0, 0.5), got " + fmt_double(delta));
  Eigen::MatrixXd W(2, 2);
  W << 1.0 - delta, delta, delta, 1.0 - delta;
  return ChannelModel(std::move(W), Eigen::VectorXd::Constant(2, 0.5));
}

ChannelModel load_channel(const std::string& source) {
  constexpr std::string_view prefix = "bsc:";
  if (source.rfind(prefix, 0) == 0) {
    const std::string_view arg = std::string_view(source).substr(prefix.size());
    double delta = 0.0;
    auto [ptr, ec] = std::from_chars(arg.data(), arg.data() + arg.size(), delta);
    if (ec != std::errc() || ptr != arg.data() + arg.size()) throw InputError("malformed builtin channel '" + source + "'");
    return builtin_bsc(delta);
  }
  std::ifstream in(source);
  if (!in) throw InputError("cannot open channel file '" + source + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_channel_spec(buf.str(), source);
}

std::optional<double> bsc_crossover(const ChannelModel& channel) {
  if (channel.input_size() != 2 || channel.output_size() != 2) return std::nullopt;
  const auto& W = channel.W();
  const auto& Q = channel.Q();
  if (Q(0) != 0.5 || Q(1) != 0.5) return std::nullopt;
  if (W(0, 1) != W(1, 0) || W(0, 0) != W(1, 1)) return std::nullopt;
  const double delta = W(0, 1);
  if (!(delta > 0.0 && delta < 0.5)) return std::nullopt;
  return delta;
}

SingularityReport singularity_report(const ChannelModel& channel) {
  SingularityReport report;
  const auto& W = channel.W();
  const auto& Q = channel.Q();
  for (Eigen::Index y = 0; y < channel.output_size(); ++y) {
    bool distinguishes = false;
    for (Eigen::Index x = 0; x < channel.input_size() && !distinguishes; ++x) {
      if (Q(x) * W(x, y) <= 0.0) continue;
      for (Eigen::Index xb = x + 1; xb < channel.input_size(); ++xb) {
        if (Q(xb) * W(xb, y) > 0.0 && W(x, y) != W(xb, y)) {
          distinguishes = true;
          break;
        }
      }
    }
    if (distinguishes) report.y1_set.push_back(y);
  }
  report.is_singular = report.y1_set.empty();
  return report;
}

}  // namespace rcu
