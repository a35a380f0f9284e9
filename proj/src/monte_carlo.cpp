// monte_carlo.cpp — worker pool over replications, deterministic sequential aggregation.
#include "ecdm/monte_carlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "ecdm/baselines.hpp"
#include "ecdm/errors.hpp"
#include "ecdm/inference.hpp"
#include "ecdm/normal.hpp"

namespace ecdm {

namespace {

ReplicationRow run_one(const PreparedScenario& prep, std::uint64_t rep,
                       double z_alpha) {
  Philox4x32 rng(prep.scenario.seed, rep);
  const PairedSample sample = draw_sample(prep, rng);
  const SplitTable table(sample);
  const EstimateBundle bundle = estimate_bundle(sample, table);
  const TestOutcome outcome = correlation_test(bundle, prep.scenario.alpha);

  ReplicationRow row;
  row.t_hat = bundle.t_hat;
  row.w1 = bundle.w1;
  row.w2 = bundle.w2;
  row.delta_scale = bundle.delta_scale;
  row.statistic = outcome.statistic;
  row.reject = outcome.reject;
  row.ci_lower = outcome.ci.lower;
  row.ci_upper = outcome.ci.upper;
  row.ci_degenerate = outcome.ci.degenerate;
  row.ci_covers = outcome.ci.contains(prep.oracle.delta);
  if (bundle.t_hat != 0.0) {
    row.kappa = kappa_hat(bundle, static_cast<int>(sample.n()));
    row.kappa_defined = true;
  }
  row.rho = rv_hat(bundle);

  const SrBundle sr = sr_bundle(sample);
  row.sr_delta = sr.delta_sr;
  row.sr_w1 = sr.w1_sr;
  row.sr_w2 = sr.w2_sr;
  if (sr.delta_scale_sr) {
    row.sr_defined = true;
    row.sr_statistic = sr.delta_sr / *sr.delta_scale_sr;
    row.sr_reject = row.sr_statistic > z_alpha;
  }
  return row;
}

double median_sorted(const std::vector<double>& sorted) {
  const std::size_t m = sorted.size();
  if (m == 0) return 0.0;
  if (m % 2 == 1) return sorted[m / 2];
  return 0.5 * (sorted[m / 2 - 1] + sorted[m / 2]);
}

// Type-7 (linear interpolation) quantile of a sorted sample, q in [0, 1].
double quantile_sorted(const std::vector<double>& sorted, double q) {
  const std::size_t m = sorted.size();
  if (m == 1) return sorted[0];
  const double pos = q * static_cast<double>(m - 1);
  const std::size_t lo = static_cast<std::size_t>(pos);
  const std::size_t hi = std::min(lo + 1, m - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

}  // namespace

double ks_to_standard_normal(std::vector<double> values) {
  if (values.empty()) throw ArgumentError("ks statistic needs a non-empty sample");
  std::sort(values.begin(), values.end());
  const double r = static_cast<double>(values.size());
  double d = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double cdf = normal_cdf(values[i]);
    d = std::max(d, cdf - static_cast<double>(i) / r);
    d = std::max(d, static_cast<double>(i + 1) / r - cdf);
  }
  return d;
}

Histogram fd_histogram(const std::vector<double>& values) {
  if (values.empty()) throw ArgumentError("histogram needs a non-empty sample");
  std::vector<double> sorted(values);
  std::sort(sorted.begin(), sorted.end());
  const double lo = sorted.front();
  const double hi = sorted.back();
  const double iqr = quantile_sorted(sorted, 0.75) - quantile_sorted(sorted, 0.25);
  const double width =
      2.0 * iqr / std::cbrt(static_cast<double>(sorted.size()));

  std::size_t bins = 1;
  if (width > 0.0 && hi > lo) {
    bins = static_cast<std::size_t>(std::ceil((hi - lo) / width));
    bins = std::clamp<std::size_t>(bins, 1, 200);
  }

  Histogram h;
  h.edges.resize(bins + 1);
  h.counts.assign(bins, 0);
  const double span = hi > lo ? hi - lo : 1.0;
  for (std::size_t b = 0; b <= bins; ++b) {
    h.edges[b] = lo + span * static_cast<double>(b) / static_cast<double>(bins);
  }
  for (double v : values) {
    auto idx = static_cast<std::size_t>((v - lo) / span * static_cast<double>(bins));
    h.counts[std::min(idx, bins - 1)] += 1;
  }
  return h;
}

SimReport run_monte_carlo(const SimScenario& scenario, int workers) {
  return run_monte_carlo(prepare_scenario(scenario), workers);
}

SimReport run_monte_carlo(const PreparedScenario& prep, int workers) {
  const int r_total = prep.scenario.replications;
  const double z_alpha = normal_quantile(prep.scenario.alpha);

  std::vector<ReplicationRow> rows(static_cast<std::size_t>(r_total));
  const int thread_count = std::clamp(workers, 1, std::max(1, r_total));

  if (thread_count == 1) {
    for (int rep = 0; rep < r_total; ++rep) {
      rows[static_cast<std::size_t>(rep)] =
          run_one(prep, static_cast<std::uint64_t>(rep), z_alpha);
    }
  } else {
    std::atomic<int> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto work = [&]() {
      try {
        for (;;) {
          const int rep = next.fetch_add(1, std::memory_order_relaxed);
          if (rep >= r_total) return;
          rows[static_cast<std::size_t>(rep)] =
              run_one(prep, static_cast<std::uint64_t>(rep), z_alpha);
        }
      } catch (...) {
        const std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    };
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(thread_count));
    for (int t = 0; t < thread_count; ++t) pool.emplace_back(work);
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
  }

  SimReport report;
  report.scenario = prep.scenario;
  report.n = prep.n;
  report.oracle = prep.oracle;
  report.rows = std::move(rows);

  const double r = static_cast<double>(r_total);
  std::int64_t rejects = 0;
  std::int64_t sr_rejects = 0;
  std::int64_t covers = 0;
  double t_sum = 0.0, w1_sum = 0.0, w2_sum = 0.0, sr_sum = 0.0, rho_sum = 0.0;
  for (const ReplicationRow& row : report.rows) {
    rejects += row.reject ? 1 : 0;
    covers += row.ci_covers ? 1 : 0;
    t_sum += row.t_hat;
    w1_sum += row.w1;
    w2_sum += row.w2;
    sr_sum += row.sr_delta;
    rho_sum += row.rho;
    if (row.sr_defined) {
      report.sr_defined_count += 1;
      sr_rejects += row.sr_reject ? 1 : 0;
    }
    if (row.kappa_defined) report.kappa_defined_count += 1;
  }
  report.rejection_rate = static_cast<double>(rejects) / r;
  report.rejection_se =
      std::sqrt(report.rejection_rate * (1.0 - report.rejection_rate) / r);
  report.sr_rejection_rate =
      report.sr_defined_count > 0
          ? static_cast<double>(sr_rejects) /
                static_cast<double>(report.sr_defined_count)
          : 0.0;
  report.coverage = static_cast<double>(covers) / r;
  report.t_mean = t_sum / r;
  report.w1_mean = w1_sum / r;
  report.w2_mean = w2_sum / r;
  report.sr_delta_mean = sr_sum / r;
  report.rho_mean = rho_sum / r;

  double t_ss = 0.0, sr_ss = 0.0, rho_ss = 0.0;
  for (const ReplicationRow& row : report.rows) {
    t_ss += (row.t_hat - report.t_mean) * (row.t_hat - report.t_mean);
    sr_ss += (row.sr_delta - report.sr_delta_mean) *
             (row.sr_delta - report.sr_delta_mean);
    rho_ss += (row.rho - report.rho_mean) * (row.rho - report.rho_mean);
  }
  if (r_total > 1) {
    report.t_var = t_ss / (r - 1.0);
    report.sr_delta_var = sr_ss / (r - 1.0);
    report.rho_se = std::sqrt(rho_ss / (r - 1.0) / r);
  }

  const OracleQuantities& o = report.oracle;
  if (o.delta > 0.0) {
    report.t_over_delta_mean = report.t_mean / o.delta;
    report.sr_over_delta_mean = report.sr_delta_mean / o.delta;
  }
  if (o.k_defined()) {
    report.var_ratio_k = report.t_var / (o.k_pop() * o.k_pop());
  }
  report.var_ratio_delta =
      report.t_var / (o.delta_scale_pop * o.delta_scale_pop);

  std::vector<double> stats;
  stats.reserve(report.rows.size());
  for (const ReplicationRow& row : report.rows) stats.push_back(row.statistic);
  report.ks_statistic = ks_to_standard_normal(stats);
  report.stat_histogram = fd_histogram(stats);

  std::vector<double> kappas;
  kappas.reserve(report.rows.size());
  for (const ReplicationRow& row : report.rows) {
    if (row.kappa_defined) kappas.push_back(row.kappa);
  }
  std::sort(kappas.begin(), kappas.end());
  report.kappa_median = median_sorted(kappas);
  std::vector<double> inv_kappas;
  inv_kappas.reserve(kappas.size());
  for (double k : kappas) {
    if (k > 0.0) inv_kappas.push_back(1.0 / k);
  }
  std::sort(inv_kappas.begin(), inv_kappas.end());
  report.inv_kappa_median = median_sorted(inv_kappas);

  return report;
}

}  // namespace ecdm
