#include "rcu/oracle.hpp"

#include "rcu/errors.hpp"
#include "rcu/info_measures.hpp"
#include "rcu/log_math.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <string>
#include <vector>

namespace rcu {

namespace {

// log k! for k = 0..n, by cumulative summation.
std::vector<double> log_factorials(std::int64_t n) {
  std::vector<double> lf(static_cast<std::size_t>(n) + 1, 0.0);
  for (std::int64_t k = 2; k <= n; ++k) lf[k] = lf[k - 1] + std::log(static_cast<double>(k));
  return lf;
}

void require_bsc_args(double delta, std::int64_t n) {
  if (!(delta > 0.0 && delta < 0.5)) throw InputError("BSC crossover must lie in (0, 0.5)");
  if (n < 1) throw InputError("block length n must be positive");
  if (n > kBscOracleMaxN) throw NumericError("BSC oracle limited to n <= " + std::to_string(kBscOracleMaxN));
}

OracleResult finish(double log_value, std::string method) {
  OracleResult r;
  r.log_value = std::min(log_value, 0.0);
  r.value = std::exp(r.log_value);
  r.method = std::move(method);
  return r;
}

// sum_t P(t) min{1, exp(log_coef - ((n - t) a + t b))} with t ~ Binomial(n, delta).
double bsc_markov_sum(double delta, std::int64_t n, double log_coef, double a, double b) {
  const auto lf = log_factorials(n);
  const double ld = std::log(delta), l1d = std::log1p(-delta);
  LogAccumulator acc;
  for (std::int64_t t = 0; t <= n; ++t) {
    const double log_pt = lf[n] - lf[t] - lf[n - t] + static_cast<double>(t) * ld + static_cast<double>(n - t) * l1d;
    const double info = static_cast<double>(n - t) * a + static_cast<double>(t) * b;
    acc.add(log_pt + std::min(0.0, log_coef - info));
  }
  return acc.value();
}

// i_s values of the BSC at agreeing and flipped positions.
std::pair<double, double> bsc_density_values(double delta, double s) {
  if (!(s > 0.0)) throw InputError("s must be positive");
  const double l1d = std::log1p(-delta), ld = std::log(delta);
  const double log_denom = log_add(s * l1d, s * ld) - std::numbers::ln2;
  return {s * l1d - log_denom, s * ld - log_denom};
}

double rcuss_log_coefficient(std::int64_t n, double logM, double psi_s, double c3) {
  if (!(psi_s >= 1.0) || !(c3 > 0.0)) throw InputError("rcu_s** requires psi_s >= 1 and c3 > 0");
  return logM + std::log(psi_s) - 0.5 * std::log(2.0 * std::numbers::pi * static_cast<double>(n) * c3);
}

void require_exhaustive(const ChannelModel& channel, std::int64_t n) {
  if (n < 1) throw InputError("block length n must be positive");
  const double pairs = std::pow(static_cast<double>(channel.input_size() * channel.output_size()), static_cast<double>(n));
  if (n > kExhaustiveMaxN || pairs > kExhaustiveMaxPairs) {
    throw NumericError("exhaustive oracle unavailable at this size (n = " + std::to_string(n) + ")");
  }
}

// E[min{1, exp(log_coef - i_s^n(X,Y))}] by enumerating support sequences.
double exhaustive_markov(const ChannelModel& channel, std::int64_t n, double log_coef, double s) {
  const DensityTable table = information_density(channel, s);
  const int depth = static_cast<int>(n);
  double total = 0.0;
  double compensation = 0.0;

  // Iterative odometer over support entries at each position.
  std::vector<Eigen::Index> idx(depth, 0);
  std::vector<double> prob(depth + 1, 1.0), info(depth + 1, 0.0);
  int pos = 0;
  while (pos >= 0) {
    if (pos == depth) {
      const double term = prob[depth] * std::exp(std::min(0.0, log_coef - info[depth]));
      const double yk = term - compensation;
      const double tk = total + yk;
      compensation = (tk - total) - yk;
      total = tk;
      --pos;
      if (pos >= 0) ++idx[pos];
      continue;
    }
    if (idx[pos] == table.size()) {
      idx[pos] = 0;
      --pos;
      if (pos >= 0) ++idx[pos];
      continue;
    }
    prob[pos + 1] = prob[pos] * table.prob(idx[pos]);
    info[pos + 1] = info[pos] + table.value(idx[pos]);
    ++pos;
  }
  return total;
}

bool tie_or_greater(double competitor, double reference) {
  return competitor >= reference - 1e-9 * std::max(1.0, std::abs(reference));
}

}  // namespace

double log_m_minus_one(double logM) {
  if (!(logM > 0.0)) return kNegInf;
  return logM + std::log(-std::expm1(-logM));
}

OracleResult bsc_exact_rcu(double delta, std::int64_t n, double logM) {
  require_bsc_args(delta, n);
  const double lm1 = log_m_minus_one(logM);
  if (lm1 == kNegInf) return finish(kNegInf, "oracle_rcu");

  const auto lf = log_factorials(n);
  const double ld = std::log(delta), l1d = std::log1p(-delta);
  const double ln2n = static_cast<double>(n) * std::numbers::ln2;
  LogAccumulator ball;  // log sum_{k <= t} C(n, k)
  LogAccumulator acc;
  for (std::int64_t t = 0; t <= n; ++t) {
    const double log_binom = lf[n] - lf[t] - lf[n - t];
    ball.add(log_binom);
    const double log_pt = log_binom + static_cast<double>(t) * ld + static_cast<double>(n - t) * l1d;
    const double log_pairwise = ball.value() - ln2n;
    acc.add(log_pt + std::min(0.0, lm1 + log_pairwise));
  }
  return finish(acc.value(), "oracle_rcu");
}

OracleResult bsc_exact_rcus(double delta, std::int64_t n, double logM, double s) {
  require_bsc_args(delta, n);
  const double lm1 = log_m_minus_one(logM);
  if (lm1 == kNegInf) return finish(kNegInf, "oracle_rcus");
  const auto [a, b] = bsc_density_values(delta, s);
  return finish(bsc_markov_sum(delta, n, lm1, a, b), "oracle_rcus");
}

OracleResult bsc_exact_rcuss(double delta, std::int64_t n, double logM, double s, double psi_s, double c3) {
  require_bsc_args(delta, n);
  const auto [a, b] = bsc_density_values(delta, s);
  return finish(bsc_markov_sum(delta, n, rcuss_log_coefficient(n, logM, psi_s, c3), a, b), "oracle_rcuss");
}

OracleResult exact_rcus_small(const ChannelModel& channel, std::int64_t n, double logM, double s) {
  require_exhaustive(channel, n);
  const double lm1 = log_m_minus_one(logM);
  if (lm1 == kNegInf) return finish(kNegInf, "oracle_rcus");
  return finish(std::log(exhaustive_markov(channel, n, lm1, s)), "oracle_rcus");
}

OracleResult exact_rcuss_small(const ChannelModel& channel, std::int64_t n, double logM, double s, double psi_s, double c3) {
  require_exhaustive(channel, n);
  return finish(std::log(exhaustive_markov(channel, n, rcuss_log_coefficient(n, logM, psi_s, c3), s)), "oracle_rcuss");
}

OracleResult exact_rcu_small(const ChannelModel& channel, std::int64_t n, double logM) {
  require_exhaustive(channel, n);
  const double lm1 = log_m_minus_one(logM);
  if (lm1 == kNegInf) return finish(kNegInf, "oracle_rcu");

  const auto& W = channel.W();
  const auto& Q = channel.Q();
  const int nx = static_cast<int>(channel.input_size());
  const int ny = static_cast<int>(channel.output_size());
  const int len = static_cast<int>(n);
  const auto lf = log_factorials(n);

  // All input sequences with their log Q^n.
  std::int64_t num_x = 1;
  for (int i = 0; i < len; ++i) num_x *= nx;
  std::vector<std::vector<int>> xs(num_x, std::vector<int>(len));
  std::vector<double> log_qx(num_x, 0.0);
  for (std::int64_t code = 0; code < num_x; ++code) {
    std::int64_t c = code;
    for (int i = 0; i < len; ++i) {
      xs[code][i] = static_cast<int>(c % nx);
      c /= nx;
      log_qx[code] += std::log(Q(xs[code][i]));
    }
  }

  LogAccumulator acc;
  std::vector<int> counts(ny, 0);
  counts[0] = len;
  // Enumerate compositions of n into ny parts.
  while (true) {
    std::vector<int> y;
    for (int b = 0; b < ny; ++b) y.insert(y.end(), counts[b], b);
    double log_multinomial = lf[n];
    for (int b = 0; b < ny; ++b) log_multinomial -= lf[counts[b]];

    std::vector<double> loglik(num_x);
    for (std::int64_t code = 0; code < num_x; ++code) {
      double l = 0.0;
      for (int i = 0; i < len; ++i) l += std::log(W(xs[code][i], y[i]));
      loglik[code] = l;
    }
    // Competitor distribution: sorted likelihoods with suffix log-masses.
    std::vector<std::pair<double, double>> comp;
    for (std::int64_t code = 0; code < num_x; ++code) {
      if (std::isfinite(loglik[code]) && std::isfinite(log_qx[code])) comp.emplace_back(loglik[code], log_qx[code]);
    }
    std::sort(comp.begin(), comp.end());
    std::vector<double> suffix(comp.size() + 1, kNegInf);
    for (std::size_t j = comp.size(); j-- > 0;) suffix[j] = log_add(suffix[j + 1], comp[j].second);

    for (std::int64_t code = 0; code < num_x; ++code) {
      const double log_joint = log_qx[code] + loglik[code];
      if (!std::isfinite(log_joint)) continue;
      const double l = loglik[code];
      auto it = std::partition_point(comp.begin(), comp.end(), [&](const auto& e) { return !tie_or_greater(e.first, l); });
      const double log_pairwise = suffix[static_cast<std::size_t>(it - comp.begin())];
      acc.add(log_multinomial + log_joint + std::min(0.0, lm1 + log_pairwise));
    }

    // Next composition (reverse lexicographic).
    int b = ny - 2;
    while (b >= 0 && counts[b] == 0) --b;
    if (b < 0) break;
    --counts[b];
    const int rest = counts[ny - 1] + 1;
    counts[ny - 1] = 0;
    counts[b + 1] = rest;
  }
  return finish(acc.value(), "oracle_rcu");
}

namespace {

std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// SplitMix64 stream keyed by (seed, counter).
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t counter) : state_(splitmix64(seed) ^ splitmix64(~counter)) {}

  double uniform() {
    state_ += 0x9E3779B97F4A7C15ULL;
    return static_cast<double>(splitmix64(state_) >> 11) * 0x1.0p-53;
  }

 private:
  std::uint64_t state_;
};

int draw(CounterRng& rng, const Eigen::Ref<const Eigen::VectorXd>& pmf) {
  const double u = rng.uniform();
  double cum = 0.0;
  int last = 0;
  for (Eigen::Index k = 0; k < pmf.size(); ++k) {
    if (pmf(k) <= 0.0) continue;
    last = static_cast<int>(k);
    cum += pmf(k);
    if (u < cum) return last;
  }
  return last;
}

// Discrete distribution over log-likelihood values, sorted, log masses.
using LogDist = std::vector<std::pair<double, double>>;

LogDist merge_sorted(LogDist d, std::size_t max_support) {
  std::sort(d.begin(), d.end());
  LogDist out;
  for (const auto& [v, lp] : d) {
    if (!out.empty() && std::abs(v - out.back().first) <= 1e-9 * std::max(1.0, std::abs(v))) {
      out.back().second = log_add(out.back().second, lp);
    } else {
      out.emplace_back(v, lp);
    }
  }
  if (out.size() > max_support) {
    throw NumericError("competing likelihood support exceeds " + std::to_string(max_support) + " points");
  }
  return out;
}

LogDist convolve(const LogDist& a, const LogDist& b, std::size_t max_support) {
  if (a.size() * b.size() > 64 * max_support) {
    throw NumericError("competing likelihood support exceeds " + std::to_string(max_support) + " points");
  }
  LogDist out;
  out.reserve(a.size() * b.size());
  for (const auto& [va, pa] : a) {
    for (const auto& [vb, pb] : b) out.emplace_back(va + vb, pa + pb);
  }
  return merge_sorted(std::move(out), max_support);
}

// Tail P[L' >= l] lookup over a merged distribution.
struct TailTable {
  LogDist dist;
  std::vector<double> suffix;

  explicit TailTable(LogDist d) : dist(std::move(d)), suffix(dist.size() + 1, kNegInf) {
    for (std::size_t j = dist.size(); j-- > 0;) suffix[j] = log_add(suffix[j + 1], dist[j].second);
  }

  double log_tail(double l) const {
    auto it = std::partition_point(dist.begin(), dist.end(), [&](const auto& e) { return !tie_or_greater(e.first, l); });
    return suffix[static_cast<std::size_t>(it - dist.begin())];
  }
};

}  // namespace

OracleResult monte_carlo_rcu(const ChannelModel& channel, std::int64_t n, double logM, std::int64_t samples,
                             std::uint64_t seed, std::optional<ImportanceTilt> tilt, std::size_t max_support) {
  if (n < 1) throw InputError("block length n must be positive");
  if (samples < 1000) throw InputError("Monte-Carlo requires at least 1000 samples");
  const double lm1 = log_m_minus_one(logM);

  OracleResult r;
  r.method = "oracle_mc";
  r.exact = false;
  if (lm1 == kNegInf) {
    r.value = 0.0;
    r.log_value = kNegInf;
    r.ci_halfwidth = 0.0;
    return r;
  }

  const auto& W = channel.W();
  const auto& Q = channel.Q();
  const int nx = static_cast<int>(channel.input_size());
  const int ny = static_cast<int>(channel.output_size());

  // Per-letter competitor distribution for each output symbol.
  std::vector<LogDist> letter(ny);
  for (int b = 0; b < ny; ++b) {
    LogDist d;
    for (int x = 0; x < nx; ++x) {
      if (Q(x) > 0.0 && W(x, b) > 0.0) d.emplace_back(std::log(W(x, b)), std::log(Q(x)));
    }
    letter[b] = merge_sorted(std::move(d), max_support);
  }

  std::map<std::pair<int, int>, LogDist> block_cache;  // (symbol, count)
  auto block = [&](int b, int count) -> const LogDist& {
    auto key = std::make_pair(b, count);
    auto it = block_cache.find(key);
    if (it != block_cache.end()) return it->second;
    LogDist d{{0.0, 0.0}};
    for (int k = 0; k < count; ++k) {
      d = convolve(d, letter[b], max_support);
      if (d.empty()) break;
    }
    return block_cache.emplace(key, std::move(d)).first->second;
  };
  std::map<std::vector<int>, TailTable> tail_cache;

  // Sampling law over flattened (x, y) and the per-letter log weight
  // log(Q(x)W(y|x)) - log(sampling law).
  const Eigen::MatrixXd joint = channel.joint();
  Eigen::MatrixXd law = joint;
  if (tilt) law = tilted_joint(channel, tilt->rho, tilt->s).probabilities;
  const Eigen::VectorXd law_flat = Eigen::Map<const Eigen::VectorXd>(law.data(), law.size());
  Eigen::MatrixXd log_weight = Eigen::MatrixXd::Zero(nx, ny);
  if (tilt) {
    for (int x = 0; x < nx; ++x) {
      for (int y = 0; y < ny; ++y) {
        if (law(x, y) > 0.0) log_weight(x, y) = std::log(joint(x, y)) - std::log(law(x, y));
      }
    }
  }

  double mean = 0.0, m2 = 0.0;
  std::vector<int> counts(ny);
  for (std::int64_t i = 0; i < samples; ++i) {
    CounterRng rng(seed, static_cast<std::uint64_t>(i));
    std::fill(counts.begin(), counts.end(), 0);
    double loglik = 0.0;
    double log_w = 0.0;
    for (std::int64_t j = 0; j < n; ++j) {
      const int cell = draw(rng, law_flat);
      const int x = cell % nx;
      const int y = cell / nx;
      ++counts[y];
      loglik += std::log(W(x, y));
      log_w += log_weight(x, y);
    }

    auto it = tail_cache.find(counts);
    if (it == tail_cache.end()) {
      LogDist d{{0.0, 0.0}};
      for (int b = 0; b < ny; ++b) {
        if (counts[b] > 0) d = convolve(d, block(b, counts[b]), max_support);
      }
      it = tail_cache.emplace(counts, TailTable(std::move(d))).first;
    }
    const double term = std::exp(log_w + std::min(0.0, lm1 + it->second.log_tail(loglik)));

    const double delta = term - mean;
    mean += delta / static_cast<double>(i + 1);
    m2 += delta * (term - mean);
  }

  const double var = samples > 1 ? m2 / static_cast<double>(samples - 1) : 0.0;
  r.value = mean;
  r.log_value = mean > 0.0 ? std::log(mean) : kNegInf;
  r.ci_halfwidth = 1.959963984540054 * std::sqrt(var / static_cast<double>(samples));
  return r;
}

}  // namespace rcu
