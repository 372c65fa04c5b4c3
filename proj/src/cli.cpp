#include "ein/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ein/gaps.hpp"
#include "ein/icgap.hpp"
#include "ein/neutralization.hpp"
#include "ein/rates.hpp"
#include "ein/verify.hpp"

namespace ein::cli {
namespace {

std::string num(double v, const char* pattern = "%.10g") {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, v);
  return buf;
}

// "a:b:s" (inclusive dB sweep), "x", or "a,b,c".
std::vector<double> parse_power_db(const std::string& text) {
  std::vector<double> out;
  const auto parse_one = [](const std::string& tok) {
    std::size_t used = 0;
    const double v = std::stod(tok, &used);
    if (used != tok.size()) throw std::invalid_argument("trailing junk");
    return v;
  };
  try {
    if (text.find(':') != std::string::npos) {
      const auto c1 = text.find(':');
      const auto c2 = text.find(':', c1 + 1);
      if (c2 == std::string::npos || text.find(':', c2 + 1) != std::string::npos)
        throw std::invalid_argument("need start:stop:step");
      const double start = parse_one(text.substr(0, c1));
      const double stop = parse_one(text.substr(c1 + 1, c2 - c1 - 1));
      const double step = parse_one(text.substr(c2 + 1));
      if (!(step > 0.0)) throw std::invalid_argument("step must be > 0");
      if (stop < start) throw std::invalid_argument("stop below start");
      // Tolerate one part in 1e9 of rounding at the top of the range.
      for (double v = start; v <= stop + step * 1e-9; v += step)
        out.push_back(v);
    } else {
      std::size_t pos = 0;
      while (pos != std::string::npos) {
        const auto comma = text.find(',', pos);
        const auto tok = text.substr(
            pos, comma == std::string::npos ? std::string::npos : comma - pos);
        out.push_back(parse_one(tok));
        pos = comma == std::string::npos ? comma : comma + 1;
      }
    }
  } catch (const std::exception&) {
    throw CLI::ValidationError(
        "--power-db", "expected dB value, comma list, or start:stop:step: '" +
                          text + "'");
  }
  if (out.empty())
    throw CLI::ValidationError("--power-db", "empty power range");
  return out;
}

// Sink selection and the one CSV schema shared by the sweep subcommands.
class CsvSink {
 public:
  explicit CsvSink(const std::string& path) {
    if (!path.empty()) {
      file_.emplace(path, std::ios::binary);
      if (!*file_)
        throw std::runtime_error("cannot open output file: " + path);
    }
  }

  std::ostream& os() { return file_ ? *file_ : std::cout; }

  void header() {
    os() << "model,L,p_db,quantity,estimate,std_error,trials,seed\n";
  }

  void row(std::string_view model, long l, double p_db, std::string_view qty,
           double estimate, double std_error, std::size_t trials,
           std::uint64_t seed) {
    os() << model << ',' << l << ',' << num(p_db, "%.6g") << ',' << qty << ','
         << num(estimate) << ',' << num(std_error) << ',' << trials << ','
         << seed << '\n';
  }

 private:
  std::optional<std::ofstream> file_;
};

struct CommonOpts {
  std::string model = "rayleigh";
  int relays = 2;
  std::string power_db = "0:30:5";
  std::size_t trials = 100000;
  std::uint64_t seed = 42;
  int threads = 0;
  std::string output;
  std::string config;
};

// Expands a plain key=value file into long-option tokens. The caller splices
// them in right after the subcommand name, so flags typed on the command
// line come later and win.
std::vector<std::string> config_tokens(const std::string& path) {
  CLI::ConfigBase reader;
  // Sentinel array bounds keep comma lists like power-db=0,10,20 intact.
  reader.arrayBounds('\x01', '\x01')->arrayDelimiter('\x01');
  std::vector<std::string> tokens;
  for (const auto& item : reader.from_file(path)) {
    if (!item.parents.empty())
      throw CLI::ValidationError("--config", "sections are not supported");
    if (item.name == "config")
      throw CLI::ValidationError("--config", "config files cannot nest");
    for (const auto& value : item.inputs)
      tokens.push_back("--" + item.name + "=" + value);
  }
  return tokens;
}

void add_common(CLI::App* sub, CommonOpts& o, bool with_relays = true) {
  sub->add_option("--model", o.model, "Fading model")
      ->check(CLI::IsMember({"uniform-phase", "rayleigh"}))
      ->capture_default_str();
  if (with_relays)
    sub->add_option("--relays", o.relays, "Number of relays L (>= 2)")
        ->check(CLI::Range(2, 1 << 20))
        ->capture_default_str();
  sub->add_option("--power-db", o.power_db,
                  "Transmit power in dB: value, comma list, or "
                  "start:stop:step")
      ->capture_default_str();
  sub->add_option("--trials", o.trials, "Monte Carlo trials")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sub->add_option("--seed", o.seed,
                  "RNG seed (falls back to ERGODIC_SEED, then 42)")
      ->envname("ERGODIC_SEED");
  sub->add_option("--threads", o.threads,
                  "Worker threads (0 = all cores); never changes results");
  sub->add_option("--output", o.output, "Write CSV here instead of stdout");
  sub->add_option("--config", o.config,
                  "Read key=value defaults for this subcommand");
}

QuantizerSpec parse_quantizer(const std::string& text) {
  // "schedule" | "phase:N" | "grid:DELTA:N"
  if (text == "schedule") return ScheduleSpec{};
  try {
    if (text.rfind("phase:", 0) == 0) {
      const int n = std::stoi(text.substr(6));
      if (n < 1) throw std::invalid_argument("bins");
      return PhaseSpec{n};
    }
    if (text.rfind("grid:", 0) == 0) {
      const auto rest = text.substr(5);
      const auto colon = rest.find(':');
      if (colon == std::string::npos) throw std::invalid_argument("grid");
      const double delta = std::stod(rest.substr(0, colon));
      const int n = std::stoi(rest.substr(colon + 1));
      if (!(delta > 0.0) || n < 1) throw std::invalid_argument("grid");
      return GridSpec{delta, n};
    }
  } catch (const std::exception&) {
  }
  throw CLI::ValidationError(
      "--quantizer", "expected schedule, phase:N, or grid:DELTA:N: '" + text +
                         "'");
}

const char* quantity_for(BoundKind kind) {
  switch (kind) {
    case BoundKind::pair_closed:
      return "bound_t2";
    case BoundKind::pair_amplitude:
      return "bound_t3";
    case BoundKind::limit_uniform:
      return "limit_t4";
    case BoundKind::limit_amplitude:
      return "limit_t5";
  }
  return "?";
}

void run_rates(const CommonOpts& o) {
  const auto model = FadingModel::parse(o.model);
  CsvSink csv(o.output);
  csv.header();
  for (const double db : parse_power_db(o.power_db)) {
    const double p = db_to_linear(db);
    const auto in = rate_in_mc(model, o.relays, p, o.trials, o.seed, o.threads);
    const auto mimo =
        rate_mimo_mc(model, o.relays, p, o.trials, o.seed, o.threads);
    csv.row(model.name(), o.relays, db, "r_in", in.mean, in.std_error,
            in.trials, o.seed);
    csv.row(model.name(), o.relays, db, "r_mimo", mimo.mean, mimo.std_error,
            mimo.trials, o.seed);
  }
}

void run_gap_vs_power(const CommonOpts& o) {
  const auto model = FadingModel::parse(o.model);
  CsvSink csv(o.output);
  csv.header();
  // The two-relay amplitude-law bound does not depend on power; estimate it
  // once and repeat it per row as the reference line.
  RateEstimate bound{};
  if (!model.unit_modulus())
    bound = gap_bound_amplitude_mc(model, o.trials, o.seed, o.threads);
  for (const double db : parse_power_db(o.power_db)) {
    const double p = db_to_linear(db);
    const auto gap = estimate_difference(
        rate_mimo_mc(model, o.relays, p, o.trials, o.seed, o.threads),
        rate_in_mc(model, o.relays, p, o.trials, o.seed, o.threads));
    csv.row(model.name(), o.relays, db, "gap", gap.mean, gap.std_error,
            gap.trials, o.seed);
    if (model.unit_modulus())
      csv.row(model.name(), o.relays, db, "bound_t2", 4.0, 0.0, 0, o.seed);
    else
      csv.row(model.name(), o.relays, db, "bound_t3", bound.mean,
              bound.std_error, bound.trials, o.seed);
  }
}

void run_gap_vs_relays(const CommonOpts& o, const std::string& relay_list) {
  const auto model = FadingModel::parse(o.model);
  std::vector<int> counts;
  try {
    std::size_t pos = 0;
    while (pos != std::string::npos) {
      const auto comma = relay_list.find(',', pos);
      const auto tok = relay_list.substr(
          pos, comma == std::string::npos ? std::string::npos : comma - pos);
      const int l = std::stoi(tok);
      if (l < 2) throw std::invalid_argument("relays");
      counts.push_back(l);
      pos = comma == std::string::npos ? comma : comma + 1;
    }
  } catch (const std::exception&) {
    throw CLI::ValidationError("--relays",
                               "expected a comma list of counts >= 2");
  }
  CsvSink csv(o.output);
  csv.header();
  for (const double db : parse_power_db(o.power_db)) {
    const double p = db_to_linear(db);
    for (const auto& rep :
         gap_vs_relays(model, p, counts, o.trials, o.seed, o.threads)) {
      csv.row(model.name(), rep.relays, db, "gap", rep.gap.mean,
              rep.gap.std_error, rep.gap.trials, o.seed);
      const bool mc_bound = rep.kind == BoundKind::pair_amplitude ||
                            rep.kind == BoundKind::limit_amplitude;
      csv.row(model.name(), rep.relays, db, quantity_for(rep.kind), rep.bound,
              rep.bound_se, mc_bound ? o.trials : 0, o.seed);
    }
  }
}

void run_pairing_sim(const CommonOpts& o, std::size_t block_length,
                     const std::string& quantizer, bool min_over_cell,
                     int probes) {
  const auto model = FadingModel::parse(o.model);
  const QuantizerSpec spec = parse_quantizer(quantizer);
  BlockOptions opt;
  opt.min_over_cell = min_over_cell;
  opt.corner_probes = probes;
  CsvSink csv(o.output);
  csv.header();
  for (const double db : parse_power_db(o.power_db)) {
    const double p = db_to_linear(db);
    const auto res =
        simulate_block(model, o.relays, p, block_length, spec, o.seed, opt);
    csv.row(model.name(), o.relays, db, "pairing_rate",
            res.per_user_matched_mean, res.per_user_matched_se,
            block_length, o.seed);
    const double f = res.matched_fraction;
    const double f_se =
        std::sqrt(std::max(0.0, f * (1.0 - f)) /
                  static_cast<double>(block_length));
    csv.row(model.name(), o.relays, db, "matched_fraction", f, f_se,
            block_length, o.seed);
  }
}

void run_ic_gap(const CommonOpts& o, int users) {
  const auto model = FadingModel::parse(o.model);
  CsvSink csv(o.output);
  csv.header();
  // The gap bound is power-independent; repeated per row for plotting.
  const auto gap = ia_gap_bound_mc(model, o.trials, o.seed, o.threads);
  for (const double db : parse_power_db(o.power_db)) {
    IcConfig cfg{users, db_to_linear(db), model};
    const auto ia = rate_ia_mc(cfg, o.trials, o.seed, o.threads);
    const auto upper = pairwise_upper_mc(cfg, o.trials, o.seed, o.threads);
    csv.row(model.name(), users, db, "r_ia", ia.mean, ia.std_error, ia.trials,
            o.seed);
    csv.row(model.name(), users, db, "ic_upper", upper.mean, upper.std_error,
            upper.trials, o.seed);
    csv.row(model.name(), users, db, "ic_gap", gap.mean, gap.std_error,
            gap.trials, o.seed);
  }
}

void run_constants(std::size_t trials, std::uint64_t seed, int threads,
                   const std::string& output) {
  CsvSink csv(output);
  csv.os() << "constant,closed_form,estimate,std_error,trials,seed\n";
  const auto rayleigh = FadingModel::rayleigh();
  const auto uniform = FadingModel::uniform_phase();
  const auto put = [&](const char* name, double closed,
                       const RateEstimate& e) {
    csv.os() << name << ',' << num(closed) << ',' << num(e.mean) << ','
             << num(e.std_error) << ',' << e.trials << ',' << seed << '\n';
  };

  const auto edet_r = expected_abs_det_mc(rayleigh, trials, seed, threads);
  const auto edet_u = expected_abs_det_mc(uniform, trials, seed, threads);
  put("mean_abs_det_rayleigh", 3.0 * M_PI / 8.0, edet_r);
  put("mean_abs_det_uniform_phase", 4.0 / M_PI, edet_u);
  put("mean_sq_det_rayleigh", 2.0,
      expected_abs_det_sq_mc(rayleigh, trials, seed, threads));
  put("mean_sq_det_uniform_phase", 2.0,
      expected_abs_det_sq_mc(uniform, trials, seed, threads));

  // Large-system gap limits derived from the mean |det| estimates; standard
  // errors propagate through d/dx of -4*log2(x).
  const auto derived = [](const RateEstimate& e) {
    RateEstimate d;
    d.mean = gap_limit_amplitude(e.mean);
    d.std_error = 4.0 * e.std_error / (e.mean * std::log(2.0));
    d.trials = e.trials;
    return d;
  };
  put("gap_limit_uniform_phase", gap_limit_uniform(), derived(edet_u));
  put("gap_limit_rayleigh", gap_limit_amplitude(3.0 * M_PI / 8.0),
      derived(edet_r));

  put("ia_gap_bound_rayleigh", 0.5 * std::log2(6.0),
      ia_gap_bound_mc(rayleigh, trials, seed, threads));
}

int run_verify(const std::string& suite, std::uint64_t seed, int threads) {
  const auto results = verify_suite(suite, seed, threads);
  std::size_t failed = 0;
  for (const auto& r : results) {
    std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << r.name << ": "
              << r.detail << '\n';
    if (!r.pass) ++failed;
  }
  std::cout << results.size() - failed << '/' << results.size()
            << " checks passed\n";
  return failed == 0 ? 0 : 2;
}

}  // namespace

int run(int argc, const char* const* argv) {
  if (argc < 1) return 1;
  CLI::App app{
      "einsim: ergodic rate and capacity-gap simulations for fading "
      "two-hop networks with interference neutralization"};
  app.require_subcommand(1);

  CommonOpts rates_o, gvp_o, gvr_o, pair_o, ic_o;
  std::string relay_list = "2,4,16,64";
  std::size_t block_length = 100000;
  std::string quantizer = "schedule";
  bool min_over_cell = false;
  int probes = 8;
  int users = 3;
  std::size_t const_trials = 1000000;
  std::uint64_t const_seed = 42;
  int const_threads = 0;
  std::string const_output;
  std::string const_config;
  std::string suite = "all";
  std::uint64_t verify_seed = 42;
  int verify_threads = 0;

  auto* rates = app.add_subcommand(
      "rates", "Ergodic neutralization and MIMO benchmark rates vs power");
  add_common(rates, rates_o);

  auto* gvp = app.add_subcommand(
      "gap-vs-power", "Capacity gap vs power with the two-relay bound");
  add_common(gvp, gvp_o);

  auto* gvr = app.add_subcommand(
      "gap-vs-relays", "Capacity gap vs relay count with limit lines");
  gvr_o.power_db = "40";
  gvr_o.trials = 10000;
  add_common(gvr, gvr_o, /*with_relays=*/false);
  gvr->add_option("--relays", relay_list, "Comma list of relay counts")
      ->capture_default_str();

  auto* pair = app.add_subcommand(
      "pairing-sim", "Finite-block quantize-and-pair scheme simulation");
  pair_o.power_db = "10";
  add_common(pair, pair_o);
  pair->add_option("--block-length", block_length, "Slots per hop")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  pair->add_option("--quantizer", quantizer,
                   "schedule, phase:N, or grid:DELTA:N")
      ->capture_default_str();
  pair->add_flag("--min-over-cell", min_over_cell,
                 "Score pairs by the minimum over sampled cell corners");
  pair->add_option("--probes", probes, "Corner probes per matched pair")
      ->check(CLI::Range(1, 4096))
      ->capture_default_str();

  auto* ic = app.add_subcommand(
      "ic-gap", "Ergodic interference-channel rates and gap bound");
  add_common(ic, ic_o, /*with_relays=*/false);
  ic->add_option("--users", users, "Number of user pairs (>= 2)")
      ->check(CLI::Range(2, 1 << 20))
      ->capture_default_str();

  auto* consts = app.add_subcommand(
      "constants", "Closed-form constants next to their MC estimates");
  consts->add_option("--trials", const_trials, "Monte Carlo trials")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  consts->add_option("--seed", const_seed, "RNG seed")
      ->envname("ERGODIC_SEED");
  consts->add_option("--threads", const_threads, "Worker threads");
  consts->add_option("--output", const_output, "Write table here");
  consts->add_option("--config", const_config, "Read key=value defaults");

  auto* verify = app.add_subcommand(
      "verify", "Run statistical/algebraic self-check suites");
  verify->add_option("--suite", suite, "lemmas, neutralization, constants, all")
      ->check(CLI::IsMember(verify_suite_names()))
      ->capture_default_str();
  verify->add_option("--seed", verify_seed, "RNG seed")
      ->envname("ERGODIC_SEED");
  verify->add_option("--threads", verify_threads, "Worker threads");

  // A value can arrive twice, once from the config file and once as an
  // explicit flag; the later occurrence wins.
  for (CLI::App* sub : {rates, gvp, gvr, pair, ic, consts, verify})
    for (CLI::Option* opt : sub->get_options())
      opt->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

  // CLI11 only reads config files for the top-level app, so expand the
  // subcommand's file by hand before parsing. Unknown keys surface as
  // unrecognized options.
  std::vector<std::string> args(argv + 1, argv + argc);
  std::string config_path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size())
      config_path = args[i + 1];
    else if (args[i].rfind("--config=", 0) == 0)
      config_path = args[i].substr(9);
  }
  if (!config_path.empty() && !args.empty() && args.front()[0] != '-') {
    try {
      const auto extra = config_tokens(config_path);
      args.insert(args.begin() + 1, extra.begin(), extra.end());
    } catch (const CLI::Error& e) {
      std::cerr << "error: " << e.what() << '\n';
      return 1;
    }
  }
  std::vector<const char*> parse_argv;
  parse_argv.reserve(args.size() + 1);
  parse_argv.push_back(argv[0]);
  for (const auto& a : args) parse_argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(parse_argv.size()), parse_argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);  // prints help, returns 0
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (rates->parsed()) run_rates(rates_o);
    if (gvp->parsed()) run_gap_vs_power(gvp_o);
    if (gvr->parsed()) run_gap_vs_relays(gvr_o, relay_list);
    if (pair->parsed())
      run_pairing_sim(pair_o, block_length, quantizer, min_over_cell, probes);
    if (ic->parsed()) run_ic_gap(ic_o, users);
    if (consts->parsed())
      run_constants(const_trials, const_seed, const_threads, const_output);
    if (verify->parsed()) return run_verify(suite, verify_seed, verify_threads);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}

}  // namespace ein::cli
