// report_io.cpp — CSV/JSON writers for simulation reports.
#include "ecdm/report_io.hpp"

#include <cstdio>
#include <fstream>

#include "ecdm/detail/scenario_json.hpp"
#include "ecdm/errors.hpp"

namespace ecdm {

namespace {

using nlohmann::json;

void append_full(std::string& out, double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  out += buf;
}

json opt_json(const std::optional<double>& v) {
  return v ? json(*v) : json(nullptr);
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ArgumentError(path + ": cannot open for writing");
  return out;
}

}  // namespace

void write_replication_table_csv(const SimReport& report,
                                 const std::string& path) {
  std::ofstream out = open_out(path);
  out << "rep,t_hat,w1,w2,delta_scale,statistic,reject,"
         "ci_lower,ci_upper,ci_degenerate,ci_covers,"
         "kappa,kappa_defined,rho,"
         "sr_delta,sr_w1,sr_w2,sr_statistic,sr_defined,sr_reject\n";
  std::string line;
  for (std::size_t rep = 0; rep < report.rows.size(); ++rep) {
    const ReplicationRow& row = report.rows[rep];
    line.clear();
    line += std::to_string(rep);
    line += ',';
    append_full(line, row.t_hat);
    line += ',';
    append_full(line, row.w1);
    line += ',';
    append_full(line, row.w2);
    line += ',';
    append_full(line, row.delta_scale);
    line += ',';
    append_full(line, row.statistic);
    line += ',';
    line += row.reject ? '1' : '0';
    line += ',';
    append_full(line, row.ci_lower);
    line += ',';
    append_full(line, row.ci_upper);
    line += ',';
    line += row.ci_degenerate ? '1' : '0';
    line += ',';
    line += row.ci_covers ? '1' : '0';
    line += ',';
    append_full(line, row.kappa);
    line += ',';
    line += row.kappa_defined ? '1' : '0';
    line += ',';
    append_full(line, row.rho);
    line += ',';
    append_full(line, row.sr_delta);
    line += ',';
    append_full(line, row.sr_w1);
    line += ',';
    append_full(line, row.sr_w2);
    line += ',';
    append_full(line, row.sr_statistic);
    line += ',';
    line += row.sr_defined ? '1' : '0';
    line += ',';
    line += row.sr_reject ? '1' : '0';
    line += '\n';
    out << line;
  }
  if (!out) throw Error(path + ": write failed");
}

std::string summary_json_string(const SimReport& report) {
  const OracleQuantities& o = report.oracle;

  json oracle{{"delta", o.delta},
              {"trace_sq1", o.trace_sq1},
              {"trace_sq2", o.trace_sq2},
              {"psi", o.psi},
              {"delta_scale_pop", o.delta_scale_pop},
              {"rho_pop", o.rho_pop},
              {"a3_ratio_1", o.a3_ratio_1},
              {"a3_ratio_2", o.a3_ratio_2},
              {"a45_ratio", opt_json(o.a45_ratio)},
              {"k_pop", opt_json(o.k_opt)},
              {"l_pop", opt_json(o.l_opt)}};

  json estimates{{"rejection_rate", report.rejection_rate},
                 {"rejection_se", report.rejection_se},
                 {"sr_rejection_rate", report.sr_rejection_rate},
                 {"sr_defined_count", report.sr_defined_count},
                 {"coverage", report.coverage},
                 {"t_mean", report.t_mean},
                 {"t_var", report.t_var},
                 {"w1_mean", report.w1_mean},
                 {"w2_mean", report.w2_mean},
                 {"sr_delta_mean", report.sr_delta_mean},
                 {"sr_delta_var", report.sr_delta_var},
                 {"t_over_delta_mean", opt_json(report.t_over_delta_mean)},
                 {"sr_over_delta_mean", opt_json(report.sr_over_delta_mean)},
                 {"var_ratio_k", opt_json(report.var_ratio_k)},
                 {"var_ratio_delta", report.var_ratio_delta},
                 {"ks_statistic", report.ks_statistic},
                 {"kappa_median", report.kappa_median},
                 {"inv_kappa_median", report.inv_kappa_median},
                 {"kappa_defined_count", report.kappa_defined_count},
                 {"rho_mean", report.rho_mean},
                 {"rho_se", report.rho_se}};

  // Constants for plotting the statistic's asymptotic density over the histogram:
  // N(0,1) under H₀; mean Δ/δ and spread K/δ under the alternative when K exists.
  json overlays{{"null_density", json{{"mean", 0.0}, {"sd", 1.0}}},
                {"shift", o.delta / o.delta_scale_pop},
                {"l_pop", opt_json(o.l_opt)}};
  if (o.k_defined()) {
    const double ratio = o.k_pop() / o.delta_scale_pop;
    overlays["k_over_delta_scale"] = ratio;
  } else {
    overlays["k_over_delta_scale"] = nullptr;
  }

  json histogram{{"edges", report.stat_histogram.edges},
                 {"counts", report.stat_histogram.counts}};

  json j{{"scenario", detail::scenario_to_json(report.scenario)},
         {"n", report.n},
         {"oracle", std::move(oracle)},
         {"estimates", std::move(estimates)},
         {"overlays", std::move(overlays)},
         {"histogram", std::move(histogram)}};
  return j.dump(2) + "\n";
}

void write_summary_json(const SimReport& report, const std::string& path) {
  std::ofstream out = open_out(path);
  out << summary_json_string(report);
  if (!out) throw Error(path + ": write failed");
}

}  // namespace ecdm
