#include "app.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rtshuffle/characters.hpp"
#include "rtshuffle/limit.hpp"
#include "rtshuffle/numeric.hpp"
#include "rtshuffle/partition.hpp"
#include "rtshuffle/perm_stats.hpp"
#include "rtshuffle/verify.hpp"
#include "rtshuffle/walk.hpp"

namespace rtshuffle::cli {

namespace {

using json = nlohmann::ordered_json;

constexpr long kMaxGridPoints = 100000;
constexpr int kMaxClassTableM = 16;
// trajectories x steps x deck size
constexpr double kMaxSimulationWork = 1e12;

// One table entry, rendered once for CSV and once for JSON.
struct Cell {
  std::string csv;
  json js;
};

Cell text(const std::string& value) {
  if (value.find_first_of(",\"\n") == std::string::npos) {
    return {value, value};
  }
  std::string quoted = "\"";
  for (char ch : value) {
    quoted += ch;
    if (ch == '"') {
      quoted += '"';
    }
  }
  return {quoted + "\"", value};
}

Cell integer(long long value) { return {std::to_string(value), value}; }

Cell integer(const Integer& value) {
  if (value.fits_slong_p()) {
    return integer(static_cast<long long>(value.get_si()));
  }
  return {value.get_str(), value.get_str()};
}

Cell real(double value) {
  const std::string rendered = format_real(value);
  return {rendered, std::isfinite(value) ? json(value) : json(rendered)};
}

struct Output {
  std::string command;
  std::vector<std::pair<std::string, std::string>> config;
  std::string mode;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  std::vector<std::pair<std::string, Cell>> summary;
};

void write_csv(const Output& o, std::ostream& os) {
  os << "# rtshuffle " << RTSHUFFLE_VERSION << "\n";
  os << "# command: " << o.command << "\n";
  os << "# config:";
  for (const auto& [key, value] : o.config) {
    os << ' ' << key << '=' << value;
  }
  os << "\n# mode: " << o.mode << "\n";
  for (std::size_t i = 0; i < o.columns.size(); ++i) {
    os << (i ? "," : "") << o.columns[i];
  }
  os << "\n";
  for (const auto& row : o.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      os << (i ? "," : "") << row[i].csv;
    }
    os << "\n";
  }
  if (!o.summary.empty()) {
    os << "# summary:";
    for (const auto& [key, cell] : o.summary) {
      os << ' ' << key << '=' << cell.csv;
    }
    os << "\n";
  }
}

void write_json(const Output& o, std::ostream& os) {
  json config = json::object();
  for (const auto& [key, value] : o.config) {
    config[key] = value;
  }
  json doc;
  doc["header"] = {{"tool", "rtshuffle"},
                   {"version", RTSHUFFLE_VERSION},
                   {"command", o.command},
                   {"config", config},
                   {"mode", o.mode}};
  doc["columns"] = o.columns;
  json rows = json::array();
  for (const auto& row : o.rows) {
    json record = json::object();
    for (std::size_t i = 0; i < row.size(); ++i) {
      record[o.columns[i]] = row[i].js;
    }
    rows.push_back(std::move(record));
  }
  doc["rows"] = std::move(rows);
  if (!o.summary.empty()) {
    json summary = json::object();
    for (const auto& [key, cell] : o.summary) {
      summary[key] = cell.js;
    }
    doc["summary"] = std::move(summary);
  }
  os << doc.dump(2) << "\n";
}

struct Common {
  std::string format = "csv";
  std::string out_path;
};

void emit(const Output& o, const Common& common, std::ostream& out) {
  std::ofstream file;
  if (!common.out_path.empty()) {
    file.open(common.out_path);
    if (!file) {
      throw ArgumentError("cannot open output file '" + common.out_path + "'");
    }
  }
  std::ostream& os = common.out_path.empty() ? out : file;
  if (common.format == "json") {
    write_json(o, os);
  } else {
    write_csv(o, os);
  }
  if (!os) {
    throw std::runtime_error("failed writing output");
  }
}

void add_common(CLI::App* sub, Common& common) {
  sub->add_option("--format", common.format, "csv (default) or json")
      ->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--out", common.out_path, "write to this file instead of stdout");
}

std::vector<double> grid(double lo, double hi, double step) {
  if (!std::isfinite(lo) || !std::isfinite(hi) || !std::isfinite(step)) {
    throw ArgumentError("grid bounds must be finite");
  }
  if (hi < lo) {
    throw ArgumentError("empty grid: c-max < c-min");
  }
  if (hi > lo && !(step > 0.0)) {
    throw ArgumentError("empty grid: c-step must be positive");
  }
  const double span = hi > lo ? (hi - lo) / step : 0.0;
  if (span + 1 > kMaxGridPoints) {
    throw ArgumentError("grid has more than " + std::to_string(kMaxGridPoints) + " points");
  }
  const long count = static_cast<long>(std::floor(span + 1e-9)) + 1;
  std::vector<double> values;
  for (long k = 0; k < count; ++k) {
    values.push_back(lo + static_cast<double>(k) * step);
  }
  return values;
}

// --- profile ---------------------------------------------------------------

struct ProfileArgs {
  Common common;
  int n = 0;
  double c_min = 0;
  double c_max = 0;
  double c_step = 0.5;
  std::optional<int> trunc;
  std::string mode = "exact";
};

void run_profile(const ProfileArgs& a, std::ostream& out) {
  const Mode mode = parse_mode(a.mode);
  if (a.n < 2) {
    throw ArgumentError("profile: n must be at least 2");
  }
  const int truncation = a.trunc.value_or(a.n - 1);
  if (truncation < 1) {
    throw ArgumentError("profile: trunc must be at least 1");
  }
  const auto cs = grid(a.c_min, a.c_max, a.c_step);
  Output o;
  o.command = "profile";
  o.config = {{"n", std::to_string(a.n)},          {"c_min", format_real(a.c_min)},
              {"c_max", format_real(a.c_max)},     {"c_step", format_real(a.c_step)},
              {"trunc", std::to_string(truncation)}, {"format", a.common.format}};
  o.mode = to_string(mode);
  o.columns = {"n", "c", "t", "tv_main", "error_bound", "tv_limit", "mode"};
  for (const auto& p : profile_curve(a.n, cs, truncation, mode)) {
    o.rows.push_back({integer(p.n), real(p.c), integer(p.t), real(p.tv_main), real(p.error_bound),
                      real(p.tv_limit), text(to_string(p.mode))});
  }
  emit(o, a.common, out);
}

// --- limit -----------------------------------------------------------------

struct LimitArgs {
  Common common;
  double c_min = -2;
  double c_max = 3;
  double c_step = 0.25;
};

void run_limit(const LimitArgs& a, std::ostream& out) {
  const auto cs = grid(a.c_min, a.c_max, a.c_step);
  Output o;
  o.command = "limit";
  o.config = {{"c_min", format_real(a.c_min)},
              {"c_max", format_real(a.c_max)},
              {"c_step", format_real(a.c_step)},
              {"format", a.common.format}};
  o.mode = "float";
  o.columns = {"c", "limit_profile"};
  for (double c : cs) {
    o.rows.push_back({real(c), real(limit_profile(c))});
  }
  emit(o, a.common, out);
}

// --- simulate --------------------------------------------------------------

struct SimulateArgs {
  Common common;
  int n = 0;
  std::optional<long> t;
  std::optional<double> c;
  long samples = 10000;
  std::uint64_t seed = 0;
  std::optional<double> ref_rate;
};

void run_simulate(const SimulateArgs& a, std::ostream& out) {
  if (a.t.has_value() == a.c.has_value()) {
    throw ArgumentError("simulate: give exactly one of --t and --c");
  }
  if (a.n < 2) {
    throw ArgumentError("simulate: n must be at least 2");
  }
  if (a.samples < 1) {
    throw ArgumentError("simulate: samples must be at least 1");
  }
  const WalkParams params = a.t ? WalkParams::at_steps(a.n, *a.t) : WalkParams::at_window(a.n, *a.c);
  const double rate = a.ref_rate.value_or(a.c ? 1.0 + std::exp(-2.0 * *a.c) : 1.0);
  if (!(rate > 0.0) || !std::isfinite(rate)) {
    throw ArgumentError("simulate: reference rate must be positive and finite");
  }
  const double work = static_cast<double>(a.samples) * static_cast<double>(params.t + 1) * a.n;
  if (work > kMaxSimulationWork) {
    throw SizeLimitError("simulate: samples x steps x n exceeds " + format_real(kMaxSimulationWork));
  }
  const FixedPointHistogram h =
      empirical_fixed_point_hist({a.n, params.t, a.samples, a.seed}, rate);

  Output o;
  o.command = "simulate";
  o.config = {{"n", std::to_string(a.n)}};
  if (a.c) {
    o.config.emplace_back("c", format_real(*a.c));
  }
  o.config.insert(o.config.end(), {{"t", std::to_string(params.t)},
                                   {"samples", std::to_string(a.samples)},
                                   {"seed", std::to_string(a.seed)},
                                   {"ref_rate", format_real(rate)},
                                   {"format", a.common.format}});
  o.mode = "monte-carlo";
  o.columns = {"m", "count", "empirical_p", "reference_p"};
  for (std::size_t m = 0; m < h.counts.size(); ++m) {
    o.rows.push_back({integer(static_cast<long long>(m)), integer(h.counts[m]), real(h.empirical[m]),
                      real(h.reference[m])});
  }
  o.summary = {{"tv", real(h.tv)},
               {"mean_fixed_points", real(h.mean)},
               {"reference_tail", real(h.reference_tail)},
               {"samples", integer(a.samples)},
               {"t", integer(params.t)}};
  emit(o, a.common, out);
}

// --- verify ----------------------------------------------------------------

struct VerifyArgs {
  Common common;
  std::vector<std::string> only;
  std::optional<int> n;
  std::optional<int> j;
  std::string inject_fault;
  std::uint64_t seed = 20190501;
  int trials = 200;
};

int run_verify(const VerifyArgs& a, std::ostream& out, std::ostream& err) {
  VerifyOptions options;
  options.only = a.only;
  options.n = a.n;
  options.j = a.j;
  options.inject_cache_fault = a.inject_fault == "cache";
  options.seed = a.seed;
  if (a.trials < 1) {
    throw ArgumentError("verify: trials must be at least 1");
  }
  options.transfer_trials = a.trials;
  const auto records = run_verification(options);

  Output o;
  o.command = "verify";
  std::string only;
  for (const auto& name : a.only) {
    only += (only.empty() ? "" : "+") + name;
  }
  o.config = {{"only", only.empty() ? "all" : only},
              {"n", a.n ? std::to_string(*a.n) : "default"},
              {"j", a.j ? std::to_string(*a.j) : "default"},
              {"inject_fault", a.inject_fault.empty() ? "none" : a.inject_fault},
              {"seed", std::to_string(a.seed)},
              {"trials", std::to_string(a.trials)},
              {"format", a.common.format}};
  o.mode = "exact";
  o.columns = {"family", "check", "inputs", "cases", "residual", "status", "detail"};
  std::size_t failed = 0;
  for (const auto& r : records) {
    std::string inputs;
    json inputs_js = json::object();
    for (const auto& [key, value] : r.inputs) {
      inputs += (inputs.empty() ? "" : " ") + key + "=" + value;
      inputs_js[key] = value;
    }
    Cell inputs_cell = text(inputs);
    inputs_cell.js = inputs_js;
    o.rows.push_back({text(r.family), text(r.name), inputs_cell,
                      integer(static_cast<long long>(r.cases)), real(r.residual),
                      text(r.passed ? "pass" : "fail"), text(r.detail)});
    failed += r.passed ? 0 : 1;
    err << (r.passed ? "PASS " : "FAIL ") << r.family << ": " << r.name << " [" << inputs << "] "
        << r.cases << " cases, residual " << format_real(r.residual);
    if (!r.passed) {
      err << ", first failure: " << r.detail;
    }
    err << "\n";
  }
  o.summary = {{"checks", integer(static_cast<long long>(records.size()))},
               {"failed", integer(static_cast<long long>(failed))}};
  emit(o, a.common, out);
  err << (failed == 0 ? "verification passed" : "verification FAILED") << " (" << records.size()
      << " checks, " << failed << " failed)\n";
  return failed == 0 ? kExitOk : kExitVerifyFailed;
}

// --- bounds ----------------------------------------------------------------

struct BoundsArgs {
  Common common;
  std::string kind = "remainder";
  int n = 0;
  std::optional<long> t;
  std::optional<double> c;
  int j_max = 3;
};

void run_bounds(const BoundsArgs& a, std::ostream& out) {
  Output o;
  o.command = "bounds";
  o.mode = "exact";
  if (a.kind == "remainder") {
    if (a.t.has_value() == a.c.has_value()) {
      throw ArgumentError("bounds: give exactly one of --t and --c");
    }
    if (a.n < 2) {
      throw ArgumentError("bounds: n must be at least 2");
    }
    if (a.n > kMaxFloatN) {
      throw SizeLimitError("bounds: n = " + std::to_string(a.n) + " exceeds " +
                           std::to_string(kMaxFloatN));
    }
    const WalkParams params =
        a.t ? WalkParams::at_steps(a.n, *a.t) : WalkParams::at_window(a.n, *a.c);
    o.config = {{"kind", a.kind}, {"n", std::to_string(a.n)}};
    if (a.c) {
      o.config.emplace_back("c", format_real(*a.c));
    }
    o.config.emplace_back("t", std::to_string(params.t));
    o.config.emplace_back("format", a.common.format);
    o.columns = {"M", "remainder_bound", "error_bound"};
    // error_bound of truncation M is half the remainder at M + 1
    for (int m = 1; m < a.n; ++m) {
      const Rational remainder = remainder_bound_exact(params, m);
      const Rational next = m + 1 < a.n ? remainder_bound_exact(params, m + 1) : Rational(0);
      o.rows.push_back({integer(m), real(to_double(remainder)), real(to_double(Rational(next / 2)))});
    }
  } else {
    if (a.n < 1) {
      throw ArgumentError("bounds: n must be at least 1");
    }
    if (a.j_max < 2) {
      throw ArgumentError("bounds: j-max must be at least 2");
    }
    if (a.n > 5000) {
      throw SizeLimitError("bounds: margin is limited to n <= 5000");
    }
    o.config = {{"kind", a.kind},
                {"n", std::to_string(a.n)},
                {"j_max", std::to_string(a.j_max)},
                {"format", a.common.format}};
    o.columns = {"n", "j", "small_cycle_count_log", "margin"};
    for (int j = 2; j <= a.j_max; ++j) {
      o.rows.push_back({integer(a.n), integer(j), real(log(count_small_cycle_perms(a.n, j))),
                        real(prop37_margin(a.n, j))});
    }
  }
  emit(o, a.common, out);
}

// --- classtable ------------------------------------------------------------

struct ClassTableArgs {
  Common common;
  int m = 0;
};

void run_classtable(const ClassTableArgs& a, std::ostream& out) {
  if (a.m < 1) {
    throw ArgumentError("classtable: m must be at least 1");
  }
  if (a.m > kMaxClassTableM) {
    throw SizeLimitError("classtable: m = " + std::to_string(a.m) + " exceeds " +
                         std::to_string(kMaxClassTableM));
  }
  Output o;
  o.command = "classtable";
  o.config = {{"m", std::to_string(a.m)}, {"format", a.common.format}};
  o.mode = "exact";
  o.columns = {"lambda", "mu", "class_size", "character"};
  const auto shapes = enumerate_partitions(a.m);
  for (const auto& lambda : shapes) {
    for (const auto& mu : shapes) {
      o.rows.push_back({text(lambda.to_string()), text(mu.to_string()), integer(class_size(mu)),
                        integer(mn_character(lambda, mu))});
    }
  }
  emit(o, a.common, out);
}

void add_t_or_c(CLI::App* sub, std::optional<long>& t, std::optional<double>& c) {
  auto* t_opt = sub->add_option("--t", t, "number of steps");
  auto* c_opt = sub->add_option("--c", c, "window parameter: t = floor(n ln(n)/2 + c n)");
  t_opt->excludes(c_opt);
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Random-transposition shuffle: spectral TV, limit profile, simulation, checks",
               "rtshuffle"};
  app.set_version_flag("--version", std::string("rtshuffle ") + RTSHUFFLE_VERSION);
  app.require_subcommand(1);

  ProfileArgs profile;
  auto* p = app.add_subcommand("profile", "truncated TV with certificate over a c-grid");
  p->add_option("--n", profile.n, "deck size")->required();
  p->add_option("--c-min", profile.c_min)->required();
  p->add_option("--c-max", profile.c_max)->required();
  p->add_option("--c-step", profile.c_step, "grid step (default 0.5)");
  p->add_option("--trunc", profile.trunc, "keep λ_1 >= n - M (default n - 1, the full sum)");
  p->add_option("--mode", profile.mode, "exact (default) or float")
      ->check(CLI::IsMember({"exact", "float"}));
  add_common(p, profile.common);

  LimitArgs limit;
  auto* l = app.add_subcommand("limit", "limit profile d_TV(Poiss(1 + e^{-2c}), Poiss(1))");
  l->add_option("--c-min", limit.c_min);
  l->add_option("--c-max", limit.c_max);
  l->add_option("--c-step", limit.c_step);
  add_common(l, limit.common);

  SimulateArgs simulate;
  auto* s = app.add_subcommand("simulate", "Monte Carlo fixed-point histogram");
  s->add_option("--n", simulate.n, "deck size")->required();
  add_t_or_c(s, simulate.t, simulate.c);
  s->add_option("--samples", simulate.samples, "trajectories (default 10000)");
  s->add_option("--seed", simulate.seed, "64-bit seed (default 0)");
  s->add_option("--ref-rate", simulate.ref_rate,
                "Poisson reference rate (default 1 + e^{-2c} with --c, else 1)");
  add_common(s, simulate.common);

  VerifyArgs verify;
  auto* v = app.add_subcommand("verify", "run the invariant suite");
  v->add_option("--only", verify.only, "families to run (comma separated)")->delimiter(',');
  v->add_option("--n", verify.n, "restrict size-indexed families to this n");
  v->add_option("--j", verify.j, "restrict j-indexed families to this j");
  v->add_option("--inject-fault", verify.inject_fault, "corrupt a cache entry first")
      ->check(CLI::IsMember({"cache"}));
  v->add_option("--seed", verify.seed, "seed for random transfer weights");
  v->add_option("--trials", verify.trials, "random weight vectors per j (default 200)");
  add_common(v, verify.common);

  BoundsArgs bounds;
  auto* b = app.add_subcommand("bounds", "remainder sums by truncation, small-cycle margins");
  b->add_option("--kind", bounds.kind, "remainder (default) or margin")
      ->check(CLI::IsMember({"remainder", "margin"}));
  b->add_option("--n", bounds.n, "deck size")->required();
  add_t_or_c(b, bounds.t, bounds.c);
  b->add_option("--j-max", bounds.j_max, "largest j for --kind margin (default 3)");
  add_common(b, bounds.common);

  ClassTableArgs table;
  auto* ct = app.add_subcommand("classtable", "character table of S_m with class sizes");
  ct->add_option("--m", table.m)->required();
  add_common(ct, table.common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitBadArguments;
  }

  try {
    if (p->parsed()) {
      run_profile(profile, out);
    } else if (l->parsed()) {
      run_limit(limit, out);
    } else if (s->parsed()) {
      run_simulate(simulate, out);
    } else if (v->parsed()) {
      return run_verify(verify, out, err);
    } else if (b->parsed()) {
      run_bounds(bounds, out);
    } else if (ct->parsed()) {
      run_classtable(table, out);
    }
  } catch (const SizeLimitError& e) {
    err << "rtshuffle: size limit: " << e.what() << "\n";
    return kExitTooLarge;
  } catch (const std::invalid_argument& e) {
    err << "rtshuffle: invalid argument: " << e.what() << "\n";
    return kExitBadArguments;
  } catch (const std::exception& e) {
    err << "rtshuffle: error: " << e.what() << "\n";
    return kExitVerifyFailed;
  }
  return kExitOk;
}

}  // namespace rtshuffle::cli
