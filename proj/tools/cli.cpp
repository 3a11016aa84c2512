#include "cli.hpp"

#include "rcu/asymptotics.hpp"
#include "rcu/channel.hpp"
#include "rcu/errors.hpp"
#include "rcu/exponent.hpp"
#include "rcu/info_measures.hpp"
#include "rcu/lattice.hpp"
#include "rcu/log_math.hpp"
#include "rcu/oracle.hpp"
#include "rcu/saddlepoint.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <variant>
#include <vector>

namespace rcu::cli {

namespace {

using Cell = std::variant<std::monostate, double, std::int64_t, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

std::string format_double(double v) {
  if (v == 0.0) return "0";
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 12);
  return std::string(buf, end);
}

std::string format_cell(const Cell& c) {
  struct V {
    std::string operator()(std::monostate) const { return ""; }
    std::string operator()(double v) const { return format_double(v); }
    std::string operator()(std::int64_t v) const { return std::to_string(v); }
    std::string operator()(const std::string& v) const { return v; }
  };
  return std::visit(V{}, c);
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string r = "\"";
  for (char ch : s) {
    if (ch == '"') r += '"';
    r += ch;
  }
  return r + "\"";
}

void write_csv(const Table& t, std::ostream& os) {
  for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
  os << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_escape(format_cell(row[i]));
    os << '\n';
  }
}

nlohmann::ordered_json to_json(const Cell& c) {
  struct V {
    nlohmann::ordered_json operator()(std::monostate) const { return nullptr; }
    nlohmann::ordered_json operator()(double v) const {
      if (!std::isfinite(v)) return format_double(v);
      // Same 12 significant digits as the CSV.
      return std::stod(format_double(v));
    }
    nlohmann::ordered_json operator()(std::int64_t v) const { return v; }
    nlohmann::ordered_json operator()(const std::string& v) const { return v; }
  };
  return std::visit(V{}, c);
}

void write_json(const Table& t, std::ostream& os) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& row : t.rows) {
    nlohmann::ordered_json obj;
    for (std::size_t i = 0; i < row.size(); ++i) obj[t.columns[i]] = to_json(row[i]);
    arr.push_back(std::move(obj));
  }
  os << arr.dump(2) << '\n';
}

struct Options {
  std::string channel;
  std::optional<std::int64_t> n;
  std::optional<double> eps;
  std::optional<double> rate_bits, rate_nats, log_m;
  std::string method;
  std::string s = "auto";
  std::string half_log_n = "on";
  std::string out;
  std::string format = "csv";
  std::uint64_t seed = 1;
  std::int64_t samples = 10'000;
  std::string importance = "off";
  std::optional<std::int64_t> n_min, n_max;
  std::int64_t n_count = 10;
  std::string spacing = "log";
  std::string methods = "saddlepoint,exact_asymptotics,normal,exponent";
};

const std::vector<std::string> kAllMethods = {"saddlepoint", "exact_asymptotics", "normal", "normal_no_half_log",
                                              "exponent",    "oracle_rcu",        "oracle_rcuss", "oracle_mc"};

SPolicy parse_s(const std::string& text) {
  if (text == "auto") return std::nullopt;
  double v = 0.0;
  auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || p != text.data() + text.size() || !(v > 0.0) || !std::isfinite(v)) {
    throw InputError("--s must be 'auto' or a positive number, got '" + text + "'");
  }
  return v;
}

bool parse_on_off(const std::string& text, const char* flag) {
  if (text == "on") return true;
  if (text == "off") return false;
  throw InputError(std::string(flag) + " must be 'on' or 'off'");
}

std::string canonical_method(std::string name) {
  if (std::find(kAllMethods.begin(), kAllMethods.end(), name) != kAllMethods.end()) return name;
  if (name == "rcu" || name == "rcuss" || name == "mc") return "oracle_" + name;
  throw InputError("unknown method '" + name + "'");
}

int rate_flag_count(const Options& o) {
  return static_cast<int>(o.rate_bits.has_value()) + o.rate_nats.has_value() + o.log_m.has_value();
}

// Rate in nats/use at block length n.
double resolve_rate(const Options& o, std::int64_t n) {
  if (rate_flag_count(o) != 1) throw InputError("exactly one of --rate-bits, --rate-nats, --logM is required");
  if (o.rate_bits) return bits_to_nats(*o.rate_bits);
  if (o.rate_nats) return *o.rate_nats;
  return *o.log_m / static_cast<double>(n);
}

std::int64_t require_n(const Options& o) {
  if (!o.n) throw InputError("--n is required");
  if (*o.n < 1) throw InputError("--n must be a positive integer");
  return *o.n;
}

Cell regime_cell(const ChannelModel& channel, double rate, double s) {
  try {
    return std::string(to_string(classify_regime(channel, rate, s)));
  } catch (const Error&) {
    return std::monostate{};
  }
}

OracleResult oracle_rcu(const ChannelModel& channel, std::int64_t n, double logM) {
  if (auto d = bsc_crossover(channel)) return bsc_exact_rcu(*d, n, logM);
  if (n > kExhaustiveMaxN) throw NumericError("oracle unavailable at this size");
  return exact_rcu_small(channel, n, logM);
}

struct RcussEval {
  OracleResult result;
  TiltingSolution solution;
};

RcussEval oracle_rcuss(const ChannelModel& channel, std::int64_t n, double logM, SPolicy s) {
  const double rate = logM / static_cast<double>(n);
  RcussEval e;
  e.solution = tilting_solution(channel, rate, s);
  if (auto d = bsc_crossover(channel)) {
    e.result = bsc_exact_rcuss(*d, n, logM, e.solution.s, e.solution.psi_s, e.solution.c3);
  } else if (n <= kExhaustiveMaxN) {
    e.result = exact_rcuss_small(channel, n, logM, e.solution.s, e.solution.psi_s, e.solution.c3);
  } else {
    throw NumericError("oracle unavailable at this size");
  }
  return e;
}

OracleResult oracle_mc(const ChannelModel& channel, std::int64_t n, double logM, const Options& o) {
  std::optional<ImportanceTilt> tilt;
  if (parse_on_off(o.importance, "--importance")) {
    const double rate = logM / static_cast<double>(n);
    const double s = select_s(channel, rate);
    tilt = ImportanceTilt{rho_hat(channel, rate, s), s};
  }
  return monte_carlo_rcu(channel, n, logM, o.samples, o.seed, tilt);
}

// Fills s, rho_hat, regime, log10_value, prefactor, exponent.
struct PointValue {
  Cell s, rho_hat, regime, log10_value, prefactor, exponent;
};

PointValue evaluate_point(const ChannelModel& channel, std::int64_t n, double rate, const std::string& method,
                          const Options& o) {
  const SPolicy s = parse_s(o.s);
  const double logM = rate * static_cast<double>(n);
  PointValue p;
  if (auto m = parse_approx_method(method)) {
    ApproxMethod am = *m;
    if (am == ApproxMethod::normal && !parse_on_off(o.half_log_n, "--half-log-n")) am = ApproxMethod::normal_no_half_log;
    const ApproxResult r = evaluate_approx(channel, n, rate, am, s);
    p.s = r.solution.s;
    if (am != ApproxMethod::normal && am != ApproxMethod::normal_no_half_log) p.rho_hat = r.solution.rho_hat;
    p.regime = regime_cell(channel, rate, r.solution.s);
    p.log10_value = r.log_value / std::numbers::ln10;
    p.prefactor = r.prefactor;
    p.exponent = r.exponent;
    return p;
  }
  OracleResult r;
  if (method == "oracle_rcuss") {
    RcussEval e = oracle_rcuss(channel, n, logM, s);
    r = e.result;
    p.s = e.solution.s;
    p.rho_hat = e.solution.rho_hat;
  } else {
    r = method == "oracle_rcu" ? oracle_rcu(channel, n, logM) : oracle_mc(channel, n, logM, o);
    try {
      const double sv = s ? *s : select_s(channel, rate);
      p.s = sv;
      p.rho_hat = rho_hat(channel, rate, sv);
    } catch (const Error&) {
    }
  }
  if (const double* sv = std::get_if<double>(&p.s)) p.regime = regime_cell(channel, rate, *sv);
  p.log10_value = r.log_value / std::numbers::ln10;
  return p;
}

struct RatePoint {
  double rate = 0.0;
  Cell s, rho_hat, regime;
};

RatePoint invert_point(const ChannelModel& channel, std::int64_t n, double eps, const std::string& method,
                       const Options& o) {
  if (!(eps > 0.0 && eps < 1.0)) throw InputError("--eps must lie in (0,1)");
  const SPolicy s = parse_s(o.s);
  RatePoint rp;
  if (auto m = parse_approx_method(method)) {
    ApproxMethod am = *m;
    if (am == ApproxMethod::normal && !parse_on_off(o.half_log_n, "--half-log-n")) am = ApproxMethod::normal_no_half_log;
    rp.rate = rate_for_epsilon(channel, n, eps, am, s);
  } else if (method == "oracle_mc") {
    throw InputError("oracle_mc cannot be inverted for a rate");
  } else {
    const double nd = static_cast<double>(n);
    std::function<double(double)> f;
    if (method == "oracle_rcu") {
      f = [&](double rate) { return oracle_rcu(channel, n, rate * nd).log_value; };
    } else {
      f = [&](double rate) { return oracle_rcuss(channel, n, rate * nd, s).result.log_value; };
    }
    rp.rate = invert_rate(f, std::log(eps), 0.0, std::log(static_cast<double>(channel.input_size())));
  }
  Options diag = o;
  diag.samples = 1000;
  try {
    PointValue p = evaluate_point(channel, n, rp.rate, method == "oracle_mc" ? "saddlepoint" : method, diag);
    rp.s = p.s;
    rp.rho_hat = p.rho_hat;
    rp.regime = p.regime;
  } catch (const Error&) {
  }
  return rp;
}

std::ostream* open_output(const Options& o, std::ofstream& file, std::ostream& out) {
  if (o.out.empty()) return &out;
  file.open(o.out, std::ios::binary | std::ios::trunc);
  if (!file) throw InputError("cannot open output file '" + o.out + "'");
  return &file;
}

void emit(const Table& t, const Options& o, std::ostream& out) {
  if (o.format != "csv" && o.format != "json") throw InputError("--format must be csv or json");
  std::ofstream file;
  std::ostream* os = open_output(o, file, out);
  if (o.format == "json") {
    write_json(t, *os);
  } else {
    write_csv(t, *os);
  }
  os->flush();
}

std::string join_indices(const std::vector<Eigen::Index>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + std::to_string(v[i]);
  return s;
}

void cmd_info(const Options& o, std::ostream& out) {
  const ChannelModel ch = load_channel(o.channel);
  Table t{{"key", "value"}, {}};
  auto add = [&](std::string k, Cell v) { t.rows.push_back({std::move(k), std::move(v)}); };

  const DensityTable d1 = information_density(ch, 1.0);
  const MomentPair m1 = density_moments(d1);
  const double r_cr = critical_rate(ch, 0.5);
  const SingularityReport sing = singularity_report(ch);

  add("input_size", static_cast<std::int64_t>(ch.input_size()));
  add("output_size", static_cast<std::int64_t>(ch.output_size()));
  add("I_1_nats", m1.mean);
  add("I_1_bits", nats_to_bits(m1.mean));
  add("U_1_nats2", m1.variance);
  add("capacity_with_Q_bits", nats_to_bits(mutual_information(ch)));
  add("critical_rate_half_nats", r_cr);
  add("critical_rate_half_bits", nats_to_bits(r_cr));
  add("singular", std::string(sing.is_singular ? "yes" : "no"));
  add("y1_set", join_indices(sing.y1_set));

  std::vector<double> support(d1.value.data(), d1.value.data() + d1.value.size());
  const LatticeInfo sl = detect_lattice(support);
  add("i_1_support_lattice", std::string(sl.is_lattice ? "yes" : "no"));
  if (sl.is_lattice) {
    add("i_1_support_span", sl.span);
    add("i_1_support_offset", sl.offset);
  }
  if (sing.is_singular) {
    add("notice", std::string("singular channel: saddlepoint methods disabled"));
  } else {
    const PsiResult psi = psi_s(ch, 1.0);
    add("I_1_set_lattice", std::string(psi.lattice.is_lattice ? "yes" : "no"));
    if (psi.lattice.is_lattice) add("I_1_set_span", psi.lattice.span);
    add("psi_1", psi.psi);
  }
  emit(t, o, out);
}

void cmd_approx(const Options& o, std::ostream& out) {
  const ChannelModel ch = load_channel(o.channel);
  const std::int64_t n = require_n(o);
  const double rate = resolve_rate(o, n);
  const std::string method = canonical_method(o.method.empty() ? "saddlepoint" : o.method);
  const PointValue p = evaluate_point(ch, n, rate, method, o);
  Table t{{"n", "rate_bits", "rate_nats", "method", "s", "rho_hat", "regime", "log10_value", "prefactor", "exponent"}, {}};
  t.rows.push_back({n, nats_to_bits(rate), rate, method, p.s, p.rho_hat, p.regime, p.log10_value, p.prefactor, p.exponent});
  emit(t, o, out);
}

void cmd_rate(const Options& o, std::ostream& out) {
  const ChannelModel ch = load_channel(o.channel);
  const std::int64_t n = require_n(o);
  if (!o.eps) throw InputError("--eps is required");
  const std::string method = canonical_method(o.method.empty() ? "saddlepoint" : o.method);
  const RatePoint rp = invert_point(ch, n, *o.eps, method, o);
  Table t{{"n", "eps", "method", "s", "rho_hat", "regime", "rate_bits", "rate_nats"}, {}};
  t.rows.push_back({n, *o.eps, method, rp.s, rp.rho_hat, rp.regime, nats_to_bits(rp.rate), rp.rate});
  emit(t, o, out);
}

std::vector<std::int64_t> n_grid(const Options& o) {
  if (o.n && !o.n_min && !o.n_max) return {require_n(o)};
  if (!o.n_min || !o.n_max) throw InputError("curve needs --n or both --n-min and --n-max");
  const std::int64_t lo = *o.n_min, hi = *o.n_max;
  if (lo < 1 || hi < lo) throw InputError("n-grid requires 1 <= n-min <= n-max");
  if (o.n_count < 1) throw InputError("--n-count must be positive");
  if (o.spacing != "linear" && o.spacing != "log") throw InputError("--spacing must be linear or log");
  std::vector<std::int64_t> g;
  const std::int64_t count = lo == hi ? 1 : o.n_count;
  for (std::int64_t k = 0; k < count; ++k) {
    const double f = count == 1 ? 0.0 : static_cast<double>(k) / static_cast<double>(count - 1);
    double v = o.spacing == "log" ? static_cast<double>(lo) * std::pow(static_cast<double>(hi) / lo, f)
                                  : static_cast<double>(lo) + f * static_cast<double>(hi - lo);
    g.push_back(std::clamp<std::int64_t>(std::llround(v), lo, hi));
  }
  std::sort(g.begin(), g.end());
  g.erase(std::unique(g.begin(), g.end()), g.end());
  return g;
}

std::vector<std::string> method_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    if (item == "all") {
      out.insert(out.end(), kAllMethods.begin(), kAllMethods.end());
    } else {
      out.push_back(canonical_method(item));
    }
  }
  if (out.empty()) throw InputError("--methods is empty");
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

int cmd_curve(const Options& o, std::ostream& out, std::ostream& err) {
  const ChannelModel ch = load_channel(o.channel);
  const std::vector<std::int64_t> grid = n_grid(o);
  const std::vector<std::string> methods = method_list(o.methods);
  const bool eps_mode = o.eps.has_value();
  if (eps_mode == (rate_flag_count(o) > 0)) throw InputError("curve needs either --eps or one rate flag");
  if (!eps_mode && rate_flag_count(o) != 1) throw InputError("exactly one of --rate-bits, --rate-nats, --logM is required");
  parse_s(o.s);
  parse_on_off(o.half_log_n, "--half-log-n");

  struct Job {
    std::int64_t n;
    std::string method;
  };
  std::vector<Job> jobs;
  for (auto n : grid)
    for (const auto& m : methods) jobs.push_back({n, m});

  Table t;
  t.columns = eps_mode ? std::vector<std::string>{"n", "method", "s", "rho_hat", "regime", "rate_bits", "reason"}
                       : std::vector<std::string>{"n", "rate_bits", "method", "s", "rho_hat", "regime", "log10_value", "reason"};
  t.rows.resize(jobs.size());
  std::vector<char> failed(jobs.size(), 0);

  auto run_job = [&](std::size_t i) {
    const Job& j = jobs[i];
    std::string reason;
    try {
      if (eps_mode) {
        const RatePoint rp = invert_point(ch, j.n, *o.eps, j.method, o);
        t.rows[i] = {j.n, j.method, rp.s, rp.rho_hat, rp.regime, nats_to_bits(rp.rate), std::string()};
        return;
      }
      const double rate = resolve_rate(o, j.n);
      const PointValue p = evaluate_point(ch, j.n, rate, j.method, o);
      t.rows[i] = {j.n, nats_to_bits(rate), j.method, p.s, p.rho_hat, p.regime, p.log10_value, std::string()};
      return;
    } catch (const std::exception& e) {
      reason = e.what();
    }
    failed[i] = 1;
    if (eps_mode) {
      t.rows[i] = {j.n, j.method, std::monostate{}, std::monostate{}, std::monostate{}, std::monostate{}, reason};
    } else {
      t.rows[i] = {j.n, nats_to_bits(resolve_rate(o, j.n)), j.method, std::monostate{}, std::monostate{},
                   std::monostate{}, std::monostate{}, reason};
    }
  };

  std::atomic<std::size_t> next{0};
  const std::size_t workers = std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, jobs.size());
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i; (i = next.fetch_add(1)) < jobs.size();) run_job(i);
    });
  }
  for (auto& th : pool) th.join();

  emit(t, o, out);
  const auto nfail = std::count(failed.begin(), failed.end(), 1);
  if (nfail > 0) err << "warning: " << nfail << " of " << jobs.size() << " points failed\n";
  return 0;
}

void cmd_oracle(const Options& o, std::ostream& out) {
  const ChannelModel ch = load_channel(o.channel);
  const std::int64_t n = require_n(o);
  const double rate = resolve_rate(o, n);
  const double logM = rate * static_cast<double>(n);
  const std::string method = o.method.empty() ? "rcu" : o.method;
  const SPolicy sp = parse_s(o.s);

  OracleResult r;
  Cell s_cell;
  if (method == "rcu" || method == "oracle_rcu") {
    r = oracle_rcu(ch, n, logM);
  } else if (method == "rcus") {
    const double s = sp ? *sp : select_s(ch, rate);
    s_cell = s;
    if (auto d = bsc_crossover(ch)) {
      r = bsc_exact_rcus(*d, n, logM, s);
    } else if (n <= kExhaustiveMaxN) {
      r = exact_rcus_small(ch, n, logM, s);
    } else {
      throw NumericError("oracle unavailable at this size");
    }
  } else if (method == "rcuss" || method == "oracle_rcuss") {
    RcussEval e = oracle_rcuss(ch, n, logM, sp);
    r = e.result;
    s_cell = e.solution.s;
  } else if (method == "mc" || method == "oracle_mc") {
    r = oracle_mc(ch, n, logM, o);
  } else {
    throw InputError("unknown oracle method '" + method + "' (rcu, rcus, rcuss, mc)");
  }
  Table t{{"n", "rate_bits", "logM", "method", "s", "value", "log10_value", "exact", "ci_halfwidth"}, {}};
  Cell ci;
  if (r.ci_halfwidth) ci = *r.ci_halfwidth;
  t.rows.push_back({n, nats_to_bits(rate), logM, r.method, s_cell, r.value, r.log_value / std::numbers::ln10,
                    std::string(r.exact ? "yes" : "no"), ci});
  emit(t, o, out);
}

void add_common(CLI::App* sub, Options& o) {
  sub->add_option("--channel", o.channel, "Channel file path or bsc:<delta>")->required();
  sub->add_option("--format", o.format, "Output format: csv or json");
  sub->add_option("--out", o.out, "Output path (default stdout)");
}

void add_rate_flags(CLI::App* sub, Options& o) {
  sub->add_option("--rate-bits", o.rate_bits, "Rate in bits per channel use");
  sub->add_option("--rate-nats", o.rate_nats, "Rate in nats per channel use");
  sub->add_option("--logM", o.log_m, "Natural log of the number of codewords");
}

void add_eval_flags(CLI::App* sub, Options& o) {
  sub->add_option("--s", o.s, "auto or a fixed positive value");
  sub->add_option("--half-log-n", o.half_log_n, "Include log(n)/2 in the normal approximation: on|off");
  sub->add_option("--seed", o.seed, "Monte-Carlo seed");
  sub->add_option("--samples", o.samples, "Monte-Carlo sample count");
  sub->add_option("--importance", o.importance, "Monte-Carlo importance sampling: on|off");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Finite-blocklength random-coding union bounds and their approximations", "rcu-bounds"};
  app.require_subcommand(1);

  auto* info = app.add_subcommand("info", "Channel summary");
  add_common(info, o);

  auto* approx = app.add_subcommand("approx", "Evaluate one method at (n, rate)");
  add_common(approx, o);
  add_rate_flags(approx, o);
  add_eval_flags(approx, o);
  approx->add_option("--n", o.n, "Block length")->required();
  approx->add_option("--method", o.method, "Method name");

  auto* rate = app.add_subcommand("rate", "Rate achieving a target error probability");
  add_common(rate, o);
  add_eval_flags(rate, o);
  rate->add_option("--n", o.n, "Block length")->required();
  rate->add_option("--eps", o.eps, "Target error probability")->required();
  rate->add_option("--method", o.method, "Method name");

  auto* curve = app.add_subcommand("curve", "Sweep an n-grid over several methods");
  add_common(curve, o);
  add_rate_flags(curve, o);
  add_eval_flags(curve, o);
  curve->add_option("--eps", o.eps, "Target error probability (rate-inversion mode)");
  curve->add_option("--n", o.n, "Single block length");
  curve->add_option("--n-min", o.n_min, "Smallest block length");
  curve->add_option("--n-max", o.n_max, "Largest block length");
  curve->add_option("--n-count", o.n_count, "Number of grid points");
  curve->add_option("--spacing", o.spacing, "linear or log");
  curve->add_option("--methods", o.methods, "Comma-separated methods, or all");

  auto* oracle = app.add_subcommand("oracle", "Exact or Monte-Carlo RCU evaluation");
  add_common(oracle, o);
  add_rate_flags(oracle, o);
  add_eval_flags(oracle, o);
  oracle->add_option("--n", o.n, "Block length")->required();
  oracle->add_option("--method", o.method, "rcu, rcus, rcuss or mc");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return static_cast<int>(ErrorKind::input);
  }

  try {
    if (*info) cmd_info(o, out);
    if (*approx) cmd_approx(o, out);
    if (*rate) cmd_rate(o, out);
    if (*curve) return cmd_curve(o, out, err);
    if (*oracle) cmd_oracle(o, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.exit_code();
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return static_cast<int>(ErrorKind::numeric);
  }
  return 0;
}

}  // namespace rcu::cli
