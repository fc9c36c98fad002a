#include "commands.hpp"

#include "lowdisc/alpha.hpp"
#include "lowdisc/discrepancy.hpp"
#include "lowdisc/fib_numeration.hpp"
#include "lowdisc/sequence_expr.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace lowdisc::cli {

namespace {

using Json = nlohmann::ordered_json;

std::string digits_string(const DigitString& d) {
  std::string s = "(";
  for (std::size_t i = 0; i < d.size(); ++i) {
    s += (i ? "," : "") + std::to_string(d[i]);
  }
  return s + ")";
}

// Writes to --out, else to $LOWDISC_OUTPUT_DIR/<default_name>, else to `out`.
// Returns the path written, or an empty string for the stream.
std::string emit(const RunConfig& config, const std::string& default_name,
                 const std::string& content, std::ostream& out) {
  std::filesystem::path path;
  if (!config.out.empty()) {
    path = config.out;
  } else if (const char* dir = std::getenv(kOutputDirEnv); dir != nullptr && *dir != '\0') {
    std::filesystem::create_directories(dir);
    path = std::filesystem::path(dir) / default_name;
  }
  if (path.empty()) {
    out << content;
    return {};
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) {
    throw std::runtime_error("cannot open " + path.string() + " for writing");
  }
  file << content;
  return path.string();
}

std::string file_stem(const std::string& sequence) {
  std::string s;
  for (char ch : sequence) {
    s.push_back(std::isalnum(static_cast<unsigned char>(ch)) ? ch : '_');
  }
  return s;
}

struct Plan {
  GrowthSequence seq;
  Rational kappa;
  CBound bound;
  Rational c;
  std::uint64_t stages;
};

// Returns an exit code when the run cannot proceed.
std::optional<int> make_plan(const RunConfig& config, std::uint64_t stages, std::ostream& err,
                             std::optional<Plan>& plan) {
  if (config.precision < 12) {
    err << "error: --precision must be at least 12\n";
    return kUsage;
  }
  if (stages < 1) {
    err << "error: --stages must be at least 1\n";
    return kUsage;
  }
  GrowthSequence seq = GrowthSequence::factorial();
  try {
    seq = make_sequence(config.sequence);
  } catch (const std::invalid_argument& e) {
    err << "error: bad --sequence: " << e.what() << "\n";
    return kUsage;
  }
  GrowthReport report;
  try {
    report = check_growth(seq, std::max<std::uint64_t>(stages, 2));
  } catch (const std::domain_error& e) {
    err << "error: cannot evaluate sequence: " << e.what() << "\n";
    return kUsage;
  }
  if (!report.admissible) {
    err << "inadmissible sequence '" << seq.name() << "': " << report.diagnostic
        << " (prefix " << report.prefix << ")\n";
    return kInadmissible;
  }
  Rational kappa = seq.declared_kappa().value_or(report.min_ratio);
  CBound bound;
  try {
    bound = min_c(kappa);
  } catch (const std::domain_error& e) {
    err << "inadmissible sequence '" << seq.name() << "': " << e.what() << "\n";
    return kInadmissible;
  }
  if (bound.start_stage > stages) {
    err << "error: the construction starts at stage " << bound.start_stage
        << ", beyond --stages " << stages << "\n";
    return kUsage;
  }
  Rational c = config.c.value_or(default_c(bound));
  if (sgn(c) <= 0) {
    err << "error: --c must be positive\n";
    return kUsage;
  }
  plan.emplace(Plan{std::move(seq), std::move(kappa), std::move(bound), std::move(c), stages});
  return std::nullopt;
}

std::optional<AlphaApprox> build(const Plan& plan, std::ostream& err, int& code) {
  try {
    ConstructOptions options;
    options.start_stage = plan.bound.start_stage;
    return construct_alpha(plan.seq, golden_targets(), plan.stages, plan.c, options);
  } catch (const InadmissibleSequence& e) {
    err << e.what() << "\n";
    code = kInadmissible;
  } catch (const ConstructionError& e) {
    err << "construction failed at " << e.what() << "\n";
    code = kConstructionFailed;
  }
  return std::nullopt;
}

std::string construct_json(const Plan& plan, const AlphaApprox& state, unsigned precision) {
  const unsigned digits = certified_digits(state);
  Json j;
  j["sequence"] = plan.seq.name();
  j["stage"] = state.stage();
  j["start_stage"] = state.start_stage();
  j["kappa"] = to_fraction_string(plan.kappa);
  j["c"] = to_fraction_string(state.c());
  j["certified_digits"] = digits;
  j["alpha"] = to_decimal_floor(state.lo(), digits);
  j["lo"] = to_decimal(state.lo(), precision);
  j["hi"] = to_decimal(state.hi(), precision);
  Json zs = Json::array();
  for (const auto& z : state.zs()) {
    zs.push_back(z.get_str());
  }
  j["z"] = std::move(zs);
  return j.dump(2) + "\n";
}

std::string construct_csv(const AlphaApprox& state, unsigned precision) {
  std::ostringstream os;
  os << "k,z,lo,hi\n";
  for (const auto& rec : state.history()) {
    os << rec.k << "," << rec.z.get_str() << "," << to_decimal(rec.lo, precision) << ","
       << to_decimal(rec.hi, precision) << "\n";
  }
  return os.str();
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12f", v);
  return buf;
}

}  // namespace

int cmd_fib_rep(std::uint64_t n, std::ostream& out, std::ostream& err) {
  if (n == 0) {
    err << "error: N must be a positive integer\n";
    return kUsage;
  }
  PositiveRepTrace trace = to_positive_rep_traced(n);
  out << "zeck: " << trace.zeckendorf.to_string() << ", positive: " << trace.result.to_string()
      << "\n";
  out << "r = " << trace.result.length() << " <= floor(1 + log_phi N) = " << length_bound(n)
      << "\n";
  out << "trace (least significant digit first):\n";
  out << "  zeckendorf " << digits_string(trace.zeckendorf.digits) << "\n";
  for (const auto& step : trace.steps) {
    out << "  " << to_string(step.kind) << "@" << step.position << " -> "
        << digits_string(step.after) << "\n";
  }
  return kOk;
}

int cmd_construct(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const std::string format = config.format.empty() ? "json" : config.format;
  std::optional<Plan> plan;
  if (auto code = make_plan(config, config.stages ? config.stages : 200, err, plan)) {
    return *code;
  }
  int code = kOk;
  std::optional<AlphaApprox> state = build(*plan, err, code);
  if (!state) {
    return code;
  }
  const std::string name = "alpha_" + file_stem(plan->seq.name()) + "_K" +
                           std::to_string(state->stage()) + "." + format;
  const std::string content = format == "csv" ? construct_csv(*state, config.precision)
                                              : construct_json(*plan, *state, config.precision);
  const std::string path = emit(config, name, content, out);
  if (!path.empty()) {
    out << "wrote " << path << "\n";
    out << "alpha = " << to_decimal_floor(state->lo(), certified_digits(*state)) << "\n";
  }
  return kOk;
}

int cmd_experiment(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const std::string format = config.format.empty() ? "csv" : config.format;
  if (config.nmax < 1) {
    err << "error: --nmax must be at least 1\n";
    return kUsage;
  }
  const std::uint64_t stages = config.stages ? config.stages : config.nmax;
  if (stages < config.nmax) {
    err << "error: --stages must be at least --nmax\n";
    return kUsage;
  }
  std::optional<Plan> plan;
  if (auto code = make_plan(config, stages, err, plan)) {
    return *code;
  }
  int code = kOk;
  std::optional<AlphaApprox> state = build(*plan, err, code);
  if (!state) {
    return code;
  }

  const std::vector<SeriesRow> rows = dn_series(*state, config.nmax);
  const SegmentPartition part = partition(config.nmax);
  std::vector<std::pair<std::string, DiscrepancyReport>> blocks;
  blocks.emplace_back("prefix 1.." + std::to_string(part.prefix_size),
                      prefix_discrepancy(*state, part.prefix_size));
  for (const Block& b : part.blocks) {
    blocks.emplace_back("i=" + std::to_string(b.index) + " j=" + std::to_string(b.copy) +
                            " R=" + std::to_string(b.start),
                        segment_discrepancy(*state, b));
  }

  const std::size_t first = config.nmax >= 10 ? 10 : 2;
  double max_ratio = 0;
  std::size_t argmax = 0;
  for (const auto& row : rows) {
    if (row.n >= first && log_ratio(row) > max_ratio) {
      max_ratio = log_ratio(row);
      argmax = row.n;
    }
  }
  Rational block_sum = 0;
  Rational block_max = 0;
  bool wrap = rows.back().wrap_risk;
  for (const auto& [label, rep] : blocks) {
    block_sum += rep.value;
    block_max = std::max(block_max, rep.value);
    wrap = wrap || rep.wrap_risk;
  }

  std::ostringstream summary;
  summary << "sequence " << plan->seq.name() << ", c = " << to_fraction_string(plan->c)
          << ", stages = " << state->stage() << "\n";
  if (argmax != 0) {
    summary << "max D_N/ln N over " << first << " <= N <= " << config.nmax << ": "
            << format_double(max_ratio) << " at N = " << argmax << "\n";
  }
  summary << "max block discrepancy: " << to_decimal(block_max, 12) << " over " << blocks.size()
          << " blocks\n";
  summary << "sum of block discrepancies " << to_decimal(block_sum, 12)
          << (block_sum >= rows.back().d ? " >= " : " < ") << "D_" << config.nmax << " = "
          << to_decimal(rows.back().d, 12) << "\n";
  if (wrap) {
    summary << "warning: some points sit within their error bound of 0 or 1\n";
  }

  std::string content;
  if (format == "json") {
    Json j;
    j["sequence"] = plan->seq.name();
    j["c"] = to_fraction_string(plan->c);
    j["stages"] = state->stage();
    Json jr = Json::array();
    for (const auto& row : rows) {
      jr.push_back({{"N", row.n},
                    {"D_N", to_fraction_string(row.d)},
                    {"D_N_decimal", to_decimal(row.d, 12)},
                    {"ratio", row.n > 1 ? Json(log_ratio(row)) : Json(nullptr)}});
    }
    j["rows"] = std::move(jr);
    Json jb = Json::array();
    for (const auto& [label, rep] : blocks) {
      jb.push_back({{"block", label}, {"count", rep.count}, {"D", to_fraction_string(rep.value)},
                    {"D_decimal", to_decimal(rep.value, 12)}});
    }
    j["blocks"] = std::move(jb);
    j["max_ratio"] = max_ratio;
    j["max_ratio_at"] = argmax;
    content = j.dump(2) + "\n";
  } else {
    std::ostringstream os;
    os << csv_header() << "\n";
    for (const auto& row : rows) {
      os << csv_row(row) << "\n";
    }
    content = os.str();
  }

  const std::string name = "experiment_" + file_stem(plan->seq.name()) + "_N" +
                           std::to_string(config.nmax) + "." + format;
  const std::string path = emit(config, name, content, out);
  if (path.empty()) {
    err << summary.str();
  } else {
    out << "wrote " << path << "\n" << summary.str();
  }
  return kOk;
}

int cmd_verify(const VerifyOptions& options, std::ostream& out) {
  bool ok = true;
  run_verification(options, [&](const SuiteResult& r) {
    out << (r.passed ? "[PASS] " : "[FAIL] ") << r.name << ": " << r.detail << std::endl;
    ok = ok && r.passed;
  });
  out << (ok ? "all suites passed" : "verification FAILED") << "\n";
  return ok ? kOk : kVerificationFailed;
}

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Certified construction of alpha with low-discrepancy {alpha n_k}"};
  app.require_subcommand(1);

  RunConfig config;
  std::string c_text;
  auto add_run_options = [&](CLI::App* sub) {
    sub->add_option("--sequence", config.sequence,
                    "factorial, k_pow_k, powQ, or an expression in k (+, *, ^, !, fact())");
    sub->add_option("--stages", config.stages, "number of nested-interval stages K");
    sub->add_option("--c", c_text, "constant c as an exact rational (p/q or decimal)");
    sub->add_option("--precision", config.precision, "decimal digits for lo/hi (>= 12)");
    sub->add_option("--out", config.out,
                    std::string("output file (default: $") + kOutputDirEnv + " or stdout)");
    sub->add_option("--format", config.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
  };

  std::uint64_t fib_n = 0;
  auto* fib_rep = app.add_subcommand("fib-rep", "Zeckendorf and positive-digit representations");
  fib_rep->add_option("N", fib_n, "positive integer")->required();

  auto* construct = app.add_subcommand("construct", "build the nested intervals for alpha");
  add_run_options(construct);

  auto* experiment = app.add_subcommand("experiment", "D_N series and per-block discrepancies");
  add_run_options(experiment);
  experiment->add_option("--nmax", config.nmax, "largest N");

  VerifyOptions verify_options;
  auto* verify = app.add_subcommand("verify", "run the invariant suites");
  verify->add_option("--seed", verify_options.seed, "seed for randomized suites");
  verify->add_flag("--inject-fault", verify_options.inject_fault,
                   "corrupt one rewrite (negative control)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  if (!c_text.empty()) {
    try {
      config.c = parse_rational(c_text);
    } catch (const std::invalid_argument& e) {
      err << "error: bad --c: " << e.what() << "\n";
      return kUsage;
    }
  }

  if (fib_rep->parsed()) {
    return cmd_fib_rep(fib_n, out, err);
  }
  if (construct->parsed()) {
    return cmd_construct(config, out, err);
  }
  if (experiment->parsed()) {
    return cmd_experiment(config, out, err);
  }
  return cmd_verify(verify_options, out);
}

}  // namespace lowdisc::cli
