// ecdm_cli.cpp — command-line front end: test, structure, simulate, version.
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "ecdm/csv.hpp"
#include "ecdm/detail/scenario_json.hpp"
#include "ecdm/errors.hpp"
#include "ecdm/inference.hpp"
#include "ecdm/monte_carlo.hpp"
#include "ecdm/report_io.hpp"
#include "ecdm/scenario.hpp"

namespace {

constexpr const char* kVersion = "1.0.0";

// Human-readable reports use 6 significant digits; JSON keeps full precision.
std::string fmt6(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

struct DataOpts {
  std::string path;
  int p1 = 0;
  std::string block1_cols;
  bool log2 = false;
};

struct LoadedData {
  ecdm::PairedSample sample;
  std::vector<std::string> names;  // final column order; empty when headerless
};

std::vector<std::string> split_names(const std::string& csv) {
  std::vector<std::string> names;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = csv.find(',', start);
    std::string name = comma == std::string::npos
                           ? csv.substr(start)
                           : csv.substr(start, comma - start);
    while (!name.empty() && name.front() == ' ') name.erase(name.begin());
    while (!name.empty() && name.back() == ' ') name.pop_back();
    if (!name.empty()) names.push_back(std::move(name));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return names;
}

LoadedData load_sample(const DataOpts& opts) {
  if (opts.p1 <= 0 && opts.block1_cols.empty()) {
    throw ecdm::ArgumentError(
        "give either --p1 or --block1-cols to mark the block split");
  }
  ecdm::CsvTable table = ecdm::read_csv(opts.path);

  ecdm::Matrix data;
  Eigen::Index p1 = 0;
  std::vector<std::string> names;
  if (!opts.block1_cols.empty()) {
    const std::vector<std::string> block1 = split_names(opts.block1_cols);
    auto [reordered, width] = ecdm::split_by_names(table, block1);
    data = std::move(reordered);
    p1 = width;
    // Reordered header: the block-1 names first, the rest in file order.
    names = block1;
    for (const std::string& name : table.columns) {
      if (std::find(block1.begin(), block1.end(), name) == block1.end()) {
        names.push_back(name);
      }
    }
  } else {
    data = std::move(table.data);
    p1 = opts.p1;
    names = std::move(table.columns);
  }

  if (opts.log2) {
    if (!(data.array() > 0.0).all()) {
      throw ecdm::ArgumentError(
          "--log2 requires strictly positive data values");
    }
    data = data.array().log() / std::log(2.0);
  }

  return LoadedData{ecdm::PairedSample(std::move(data), p1), std::move(names)};
}

// Names the constant columns so a degenerate-scale failure is actionable.
std::string constant_column_note(const ecdm::PairedSample& sample,
                                 const std::vector<std::string>& names) {
  std::string note;
  for (Eigen::Index c = 0; c < sample.p(); ++c) {
    const auto col = sample.data().col(c);
    if ((col.array() == col[0]).all()) {
      if (!note.empty()) note += ", ";
      if (static_cast<std::size_t>(c) < names.size()) {
        note += names[static_cast<std::size_t>(c)];
      } else {
        note += "column " + std::to_string(c + 1);
      }
      note += c < sample.p1() ? " (block 1)" : " (block 2)";
    }
  }
  if (note.empty()) return "";
  return "constant columns: " + note;
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw ecdm::ArgumentError(out_path + ": cannot open for writing");
  out << text;
  if (!out) throw ecdm::Error(out_path + ": write failed");
}

struct TestOpts {
  DataOpts data;
  double alpha = 0.05;
  double kappa_threshold = 0.01;
  std::string format = "text";
  std::string out;
};

int cmd_test(const TestOpts& opts) {
  const LoadedData loaded = load_sample(opts.data);
  const ecdm::PairedSample& sample = loaded.sample;

  const ecdm::SplitTable table(sample);
  const ecdm::EstimateBundle bundle = ecdm::estimate_bundle(sample, table);
  const ecdm::TestOutcome outcome = ecdm::correlation_test(bundle, opts.alpha);

  bool kappa_defined = true;
  ecdm::Diagnostics diag{};
  try {
    diag = ecdm::diagnostics(bundle, static_cast<int>(sample.n()),
                             opts.kappa_threshold);
  } catch (const ecdm::UndefinedDiagnostic&) {
    kappa_defined = false;
    diag.threshold = opts.kappa_threshold;
    diag.rv = ecdm::rv_hat(bundle);
    diag.rv_clamped = std::min(std::max(diag.rv, 0.0), 1.0);
  }

  if (opts.format == "json") {
    nlohmann::json j{
        {"command", "test"},
        {"n", sample.n()},
        {"p1", sample.p1()},
        {"p2", sample.p2()},
        {"alpha", outcome.alpha},
        {"u_n", bundle.u_n},
        {"t_hat", bundle.t_hat},
        {"w1", bundle.w1},
        {"w2", bundle.w2},
        {"delta_scale", bundle.delta_scale},
        {"statistic", outcome.statistic},
        {"critical_value", outcome.critical_value},
        {"p_value", outcome.p_value},
        {"reject", outcome.reject},
        {"ci", nlohmann::json{{"lower", outcome.ci.lower},
                              {"upper", outcome.ci.upper},
                              {"degenerate", outcome.ci.degenerate}}},
        {"kappa", kappa_defined ? nlohmann::json(diag.kappa)
                                : nlohmann::json(nullptr)},
        {"kappa_small", kappa_defined ? nlohmann::json(diag.kappa_small)
                                      : nlohmann::json(nullptr)},
        {"kappa_threshold", diag.threshold},
        {"rv", diag.rv},
        {"rv_clamped", diag.rv_clamped}};
    emit(j.dump(2) + "\n", opts.out);
    return 0;
  }

  std::string text;
  text += "test of H0: P = O (one-sided)\n";
  text += "n             = " + std::to_string(sample.n()) + "\n";
  text += "p1 / p2       = " + std::to_string(sample.p1()) + " / " +
          std::to_string(sample.p2()) + "\n";
  text += "alpha         = " + fmt6(outcome.alpha) + "\n";
  text += "t_hat         = " + fmt6(bundle.t_hat) + "\n";
  text += "w1 / w2       = " + fmt6(bundle.w1) + " / " + fmt6(bundle.w2) + "\n";
  text += "delta_scale   = " + fmt6(bundle.delta_scale) + "\n";
  text += "statistic     = " + fmt6(outcome.statistic) + "\n";
  text += "critical      = " + fmt6(outcome.critical_value) + "\n";
  text += "p_value       = " + fmt6(outcome.p_value) + "\n";
  text += "reject        = " + yes_no(outcome.reject) + "\n";
  if (outcome.ci.degenerate) {
    text += "ci            = degenerate [0, 0]\n";
  } else {
    text += "ci            = [" + fmt6(outcome.ci.lower) + ", " +
            fmt6(outcome.ci.upper) + "]\n";
  }
  if (kappa_defined) {
    text += "kappa         = " + fmt6(diag.kappa) +
            " (small: " + yes_no(diag.kappa_small) + ", threshold " +
            fmt6(diag.threshold) + ")\n";
  } else {
    text += "kappa         = undefined (t_hat = 0)\n";
  }
  text += "rv            = " + fmt6(diag.rv) + " (clamped " +
          fmt6(diag.rv_clamped) + ")\n";
  emit(text, opts.out);
  return 0;
}

struct StructureOpts {
  DataOpts data;
  std::string sigma0_path;
  bool two_sided = false;
  double alpha = 0.05;
  std::string format = "text";
  std::string out;
};

int cmd_structure(const StructureOpts& opts) {
  const LoadedData loaded = load_sample(opts.data);
  const ecdm::PairedSample& sample = loaded.sample;

  const ecdm::CsvTable sigma0_table = ecdm::read_csv(opts.sigma0_path);
  const ecdm::StructureHypothesis hyp(sigma0_table.data);

  const ecdm::SplitTable table(sample);
  const ecdm::EstimateBundle bundle = ecdm::estimate_bundle(sample, table);
  const double t0 = ecdm::structure_stat(sample, table, hyp);
  const ecdm::Alternative alt = opts.two_sided
                                    ? ecdm::Alternative::two_sided
                                    : ecdm::Alternative::greater;
  const ecdm::TestOutcome outcome =
      ecdm::structure_test(sample, hyp, opts.alpha, alt);
  const char* alt_name = opts.two_sided ? "two_sided" : "greater";

  if (opts.format == "json") {
    nlohmann::json j{
        {"command", "structure"},
        {"n", sample.n()},
        {"p1", sample.p1()},
        {"p2", sample.p2()},
        {"alpha", outcome.alpha},
        {"alternative", alt_name},
        {"sigma0_norm_sq", hyp.norm_sq},
        {"t0", t0},
        {"t_hat", bundle.t_hat},
        {"w1", bundle.w1},
        {"w2", bundle.w2},
        {"delta_scale", bundle.delta_scale},
        {"statistic", outcome.statistic},
        {"critical_value", outcome.critical_value},
        {"p_value", outcome.p_value},
        {"reject", outcome.reject}};
    emit(j.dump(2) + "\n", opts.out);
    return 0;
  }

  std::string text;
  text += "test of H0: Sigma* = Sigma0 (" + std::string(alt_name) + ")\n";
  text += "n             = " + std::to_string(sample.n()) + "\n";
  text += "p1 / p2       = " + std::to_string(sample.p1()) + " / " +
          std::to_string(sample.p2()) + "\n";
  text += "alpha         = " + fmt6(outcome.alpha) + "\n";
  text += "sigma0_norm^2 = " + fmt6(hyp.norm_sq) + "\n";
  text += "t0            = " + fmt6(t0) + "\n";
  text += "delta_scale   = " + fmt6(bundle.delta_scale) + "\n";
  text += "statistic     = " + fmt6(outcome.statistic) + "\n";
  text += "critical      = " + fmt6(outcome.critical_value) + "\n";
  text += "p_value       = " + fmt6(outcome.p_value) + "\n";
  text += "reject        = " + yes_no(outcome.reject) + "\n";
  emit(text, opts.out);
  return 0;
}

struct SimulateOpts {
  std::string config;
  std::string out_dir;
  int workers = 0;
  std::uint64_t seed = 0;
  bool seed_given = false;
  std::string export_sample;
  std::string export_sigma_star;
};

int cmd_simulate(const SimulateOpts& opts) {
  ecdm::SimScenario scenario = ecdm::scenario_from_json_file(opts.config);
  if (opts.seed_given) scenario.seed = opts.seed;

  const ecdm::PreparedScenario prep = ecdm::prepare_scenario(scenario);

  std::error_code ec;
  std::filesystem::create_directories(opts.out_dir, ec);
  if (ec) {
    throw ecdm::ArgumentError(opts.out_dir +
                              ": cannot create output directory: " + ec.message());
  }

  if (!opts.export_sigma_star.empty()) {
    ecdm::write_csv_matrix(opts.export_sigma_star, prep.sigma_star);
  }
  if (!opts.export_sample.empty()) {
    ecdm::Philox4x32 rng(scenario.seed, 0);
    const ecdm::PairedSample sample = ecdm::draw_sample(prep, rng);
    ecdm::write_csv_matrix(opts.export_sample, sample.data());
  }

  const ecdm::SimReport report = ecdm::run_monte_carlo(prep, opts.workers);

  const std::string rep_path =
      (std::filesystem::path(opts.out_dir) / "replications.csv").string();
  const std::string sum_path =
      (std::filesystem::path(opts.out_dir) / "summary.json").string();
  ecdm::write_replication_table_csv(report, rep_path);
  ecdm::write_summary_json(report, sum_path);

  std::string text;
  text += "scenario      = " +
          (scenario.label.empty() ? std::string("(unlabeled)") : scenario.label) +
          " [" + ecdm::coupling_name(scenario.coupling) + ", " +
          ecdm::family_name(scenario.distribution) + "]\n";
  text += "p1 / p2 / n   = " + std::to_string(scenario.cov.p1) + " / " +
          std::to_string(scenario.cov.p2) + " / " + std::to_string(report.n) +
          "\n";
  text += "replications  = " + std::to_string(scenario.replications) +
          " (workers " + std::to_string(opts.workers) + ")\n";
  text += "delta (pop)   = " + fmt6(report.oracle.delta) + "\n";
  text += "rejection     = " + fmt6(report.rejection_rate) + " +- " +
          fmt6(report.rejection_se) +
          " [sr: " + fmt6(report.sr_rejection_rate) + "]\n";
  text += "coverage      = " + fmt6(report.coverage) + "\n";
  text += "t_mean        = " + fmt6(report.t_mean) + "\n";
  text += "ks            = " + fmt6(report.ks_statistic) + "\n";
  text += "wrote         = " + rep_path + ", " + sum_path + "\n";
  std::cout << text;
  return 0;
}

void add_data_options(CLI::App* cmd, DataOpts& data) {
  cmd->add_option("--data", data.path, "CSV data file (rows = observations)")
      ->required();
  auto* p1_opt = cmd->add_option(
      "--p1", data.p1, "width of block 1: the first p1 columns");
  auto* cols_opt = cmd->add_option(
      "--block1-cols", data.block1_cols,
      "comma-separated block-1 column names (requires a header row)");
  p1_opt->excludes(cols_opt);
  cols_opt->excludes(p1_opt);
  cmd->add_flag("--log2", data.log2,
                "log2-transform the data first (requires positive values)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cross-data-matrix inference on the covariance between two "
               "variable blocks"};
  app.require_subcommand(1);

  TestOpts test_opts;
  CLI::App* test_cmd = app.add_subcommand(
      "test", "One-sided test of no cross-block covariance, with interval and "
              "diagnostics");
  add_data_options(test_cmd, test_opts.data);
  test_cmd->add_option("--alpha", test_opts.alpha, "test level in (0, 0.5)")
      ->capture_default_str();
  test_cmd
      ->add_option("--kappa-threshold", test_opts.kappa_threshold,
                   "cutoff below which kappa indicates the consistency regime")
      ->capture_default_str();
  test_cmd->add_option("--format", test_opts.format, "text or json")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  test_cmd->add_option("--out", test_opts.out,
                       "write the report to this file instead of stdout");

  StructureOpts structure_opts;
  CLI::App* structure_cmd = app.add_subcommand(
      "structure", "Test a candidate cross-covariance matrix Sigma0");
  add_data_options(structure_cmd, structure_opts.data);
  structure_cmd
      ->add_option("--sigma0", structure_opts.sigma0_path,
                   "CSV file holding the hypothesised p1 x p2 matrix")
      ->required();
  structure_cmd->add_flag("--two-sided", structure_opts.two_sided,
                          "test against the two-sided alternative");
  structure_cmd
      ->add_option("--alpha", structure_opts.alpha, "test level in (0, 0.5)")
      ->capture_default_str();
  structure_cmd->add_option("--format", structure_opts.format, "text or json")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  structure_cmd->add_option("--out", structure_opts.out,
                            "write the report to this file instead of stdout");

  SimulateOpts sim_opts;
  sim_opts.workers = static_cast<int>(
      std::max(1u, std::thread::hardware_concurrency()));
  CLI::App* sim_cmd = app.add_subcommand(
      "simulate", "Run a replicated generative study from a JSON config");
  sim_cmd->add_option("--config", sim_opts.config, "scenario config (JSON)")
      ->required();
  sim_cmd
      ->add_option("--out-dir", sim_opts.out_dir,
                   "directory for replications.csv and summary.json")
      ->required();
  sim_cmd->add_option("--workers", sim_opts.workers, "worker thread count")
      ->capture_default_str();
  CLI::Option* seed_opt = sim_cmd->add_option(
      "--seed", sim_opts.seed, "override the config's RNG seed");
  sim_cmd->add_option("--export-sample", sim_opts.export_sample,
                      "also write replication 0's dataset to this CSV");
  sim_cmd->add_option("--export-sigma-star", sim_opts.export_sigma_star,
                      "also write the population cross-covariance to this CSV");

  CLI::App* version_cmd = app.add_subcommand("version", "Print the version");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  sim_opts.seed_given = seed_opt->count() > 0;

  try {
    if (test_cmd->parsed()) return cmd_test(test_opts);
    if (structure_cmd->parsed()) return cmd_structure(structure_opts);
    if (sim_cmd->parsed()) return cmd_simulate(sim_opts);
    if (version_cmd->parsed()) {
      std::cout << "ecdm " << kVersion << "\n";
      return 0;
    }
  } catch (const ecdm::DegenerateScale& e) {
    std::cerr << "error: " << e.what() << "\n";
    // Point at the offending columns when the data is on hand to scan.
    try {
      if (test_cmd->parsed() || structure_cmd->parsed()) {
        const DataOpts& d =
            test_cmd->parsed() ? test_opts.data : structure_opts.data;
        const LoadedData loaded = load_sample(d);
        const std::string note = constant_column_note(loaded.sample, loaded.names);
        if (!note.empty()) std::cerr << note << "\n";
      }
    } catch (...) {
    }
    return 3;
  } catch (const ecdm::NonpositiveScale& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const ecdm::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
