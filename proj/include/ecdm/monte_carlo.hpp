// monte_carlo.hpp — replicated simulation runs with deterministic aggregation.
#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ecdm/scenario.hpp"

namespace ecdm {

// Everything recorded for one replication. Booleans are stored as flags here and
// serialized as 0/1; undefined diagnostics are flagged rather than set to NaN.
struct ReplicationRow {
  double t_hat = 0.0;
  double w1 = 0.0;
  double w2 = 0.0;
  double delta_scale = 0.0;
  double statistic = 0.0;  // T̂_n/δ̂
  bool reject = false;
  double ci_lower = 0.0;
  double ci_upper = 0.0;
  bool ci_degenerate = false;
  bool ci_covers = false;  // interval contains the population Δ
  double kappa = 0.0;
  bool kappa_defined = false;  // false only when T̂_n = 0 exactly
  double rho = 0.0;
  double sr_delta = 0.0;
  double sr_w1 = 0.0;
  double sr_w2 = 0.0;
  double sr_statistic = 0.0;
  bool sr_defined = false;  // δ̂_SR exists (w1_sr·w2_sr > 0)
  bool sr_reject = false;
};

struct Histogram {
  std::vector<double> edges;        // size bins+1, equally spaced
  std::vector<std::int64_t> counts; // size bins
};

struct SimReport {
  SimScenario scenario;
  int n = 0;
  OracleQuantities oracle;
  std::vector<ReplicationRow> rows;

  // Test calibration/power.
  double rejection_rate = 0.0;
  double rejection_se = 0.0;      // √(r(1−r)/R)
  double sr_rejection_rate = 0.0; // over replications where δ̂_SR exists
  std::int64_t sr_defined_count = 0;

  // Interval calibration (degenerate intervals count as non-covering).
  double coverage = 0.0;

  // Moments of the point estimates.
  double t_mean = 0.0;
  double t_var = 0.0;
  double w1_mean = 0.0;
  double w2_mean = 0.0;
  double sr_delta_mean = 0.0;
  double sr_delta_var = 0.0;

  // Ratios against population truths; empty when the truth is zero/undefined.
  std::optional<double> t_over_delta_mean;   // mean(T̂)/Δ
  std::optional<double> sr_over_delta_mean;  // mean(Δ̂_SR)/Δ
  std::optional<double> var_ratio_k;         // var(T̂)/K²
  double var_ratio_delta = 0.0;              // var(T̂)/δ²_pop

  // Distribution of the standardized statistic.
  double ks_statistic = 0.0;  // sup-distance of T̂/δ̂ sample vs N(0,1)
  Histogram stat_histogram;   // Freedman–Diaconis bins of T̂/δ̂

  // Diagnostics across replications.
  double kappa_median = 0.0;
  double inv_kappa_median = 0.0;
  std::int64_t kappa_defined_count = 0;
  double rho_mean = 0.0;
  double rho_se = 0.0;
};

// Runs scenario.replications independent replications. Replication r always draws
// from Philox stream (seed, r), and rows land in a preallocated slot per index, so
// the report is bit-identical for any worker count.
SimReport run_monte_carlo(const SimScenario& scenario, int workers = 1);
SimReport run_monte_carlo(const PreparedScenario& prep, int workers = 1);

// Kolmogorov–Smirnov sup-distance of a sample against the standard normal.
double ks_to_standard_normal(std::vector<double> values);

// Freedman–Diaconis equal-width histogram (bin count clamped to [1, 200]).
Histogram fd_histogram(const std::vector<double>& values);

}  // namespace ecdm
