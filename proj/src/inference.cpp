// inference.cpp — decisions and diagnostics; structure statistic with cached products.
#include "ecdm/inference.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "ecdm/detail/kahan.hpp"
#include "ecdm/detail/pair_kernel.hpp"
#include "ecdm/normal.hpp"

namespace ecdm {

namespace {

void check_test_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 0.5)) {
    throw ArgumentError("test level alpha=" + std::to_string(alpha) +
                        " outside (0, 0.5)");
  }
}

TestOutcome upper_tail_outcome(double statistic, double alpha,
                               ConfidenceInterval ci) {
  TestOutcome out;
  out.statistic = statistic;
  out.critical_value = normal_quantile(alpha);
  out.p_value = 1.0 - normal_cdf(statistic);
  out.reject = statistic > out.critical_value;
  out.alpha = alpha;
  out.ci = ci;
  return out;
}

}  // namespace

StructureHypothesis::StructureHypothesis(Matrix sigma0_in)
    : sigma0(std::move(sigma0_in)) {
  if (!sigma0.allFinite()) {
    throw ArgumentError("sigma0 contains non-finite entries");
  }
  norm_sq = sigma0.squaredNorm();
}

ConfidenceInterval confidence_interval(double t_hat, double delta_scale,
                                       double alpha) {
  if (!(delta_scale > 0.0)) {
    throw ArgumentError("confidence_interval needs delta_scale > 0");
  }
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw ArgumentError("interval level alpha=" + std::to_string(alpha) +
                        " outside (0, 1)");
  }
  const double half_width = normal_quantile(alpha / 2.0) * delta_scale;
  const double upper = t_hat + half_width;
  if (upper < 0.0) {
    return {0.0, 0.0, true};
  }
  return {std::max(t_hat - half_width, 0.0), upper, false};
}

TestOutcome correlation_test(const EstimateBundle& bundle, double alpha) {
  check_test_alpha(alpha);
  return upper_tail_outcome(
      bundle.t_hat / bundle.delta_scale, alpha,
      confidence_interval(bundle.t_hat, bundle.delta_scale, alpha));
}

TestOutcome correlation_test(const PairedSample& sample, double alpha) {
  return correlation_test(estimate_bundle(sample), alpha);
}

double kappa_hat(const EstimateBundle& bundle, int n) {
  if (bundle.t_hat == 0.0) {
    throw UndefinedDiagnostic("kappa_hat undefined: T_n = 0");
  }
  const double nt = n * bundle.t_hat;
  return bundle.w1 * bundle.w2 / (nt * nt);
}

double rv_hat(const EstimateBundle& bundle) {
  const double prod = bundle.w1 * bundle.w2;
  if (!(prod > 0.0)) {
    throw DegenerateScale("rv_hat undefined: W_1n * W_2n = 0");
  }
  return bundle.t_hat / std::sqrt(prod);
}

Diagnostics diagnostics(const EstimateBundle& bundle, int n,
                        double kappa_threshold) {
  Diagnostics d;
  d.kappa = kappa_hat(bundle, n);
  d.threshold = kappa_threshold;
  d.kappa_small = d.kappa < kappa_threshold;
  d.rv = rv_hat(bundle);
  d.rv_clamped = std::clamp(d.rv, 0.0, 1.0);
  return d;
}

double structure_stat(const PairedSample& sample, const SplitTable& table,
                      const StructureHypothesis& hyp) {
  const Eigen::Index p1 = sample.p1();
  const Eigen::Index p2 = sample.p2();
  if (hyp.sigma0.rows() != p1 || hyp.sigma0.cols() != p2) {
    throw ArgumentError("sigma0 shape " + std::to_string(hyp.sigma0.rows()) +
                        "x" + std::to_string(hyp.sigma0.cols()) +
                        " does not match the (p1, p2) = (" + std::to_string(p1) +
                        ", " + std::to_string(p2) + ") partition");
  }
  const Matrix& x = sample.data();
  const int n = table.n();
  const int nk = 2 * n - 3;

  // Precompute the Σ₀ products once so each pair's correction is a length-p2 dot:
  // rows of A are x_{1i}ᵀΣ₀, rows of B1/B2 are the half-mean counterparts.
  Matrix a = x.leftCols(p1) * hyp.sigma0;
  Matrix m1_block1(nk, p1), m2_block1(nk, p1);
  for (int k = 3; k <= 2 * n - 1; ++k) {
    m1_block1.row(k - 3) = table.mean1(k).head(p1);
    m2_block1.row(k - 3) = table.mean2(k).head(p1);
  }
  Matrix b1 = m1_block1 * hyp.sigma0;
  Matrix b2 = m2_block1 * hyp.sigma0;

  const double coef1 = static_cast<double>(table.n1()) / (table.n1() - 1);
  const double coef2 = static_cast<double>(table.n2()) / (table.n2() - 1);

  detail::KahanSum acc;
  for (int i = 1; i < n; ++i) {
    for (int j = i + 1; j <= n; ++j) {
      const int k = i + j;
      double c1, c2;
      detail::pair_components(x, table, i, j, c1, c2);
      const double corr_i =
          coef1 * (a.row(i - 1) - b1.row(k - 3))
                      .dot(x.row(i - 1).tail(p2) - table.mean1(k).tail(p2));
      const double corr_j =
          coef2 * (a.row(j - 1) - b2.row(k - 3))
                      .dot(x.row(j - 1).tail(p2) - table.mean2(k).tail(p2));
      acc.add(table.u_n() * (c1 * c2) - corr_i - corr_j);
    }
  }
  const double scale = 2.0 / (static_cast<double>(n) * (n - 1));
  return scale * acc.value() + hyp.norm_sq;
}

double structure_stat(const PairedSample& sample,
                      const StructureHypothesis& hyp) {
  return structure_stat(sample, SplitTable(sample), hyp);
}

TestOutcome structure_test(const PairedSample& sample,
                           const StructureHypothesis& hyp, double alpha,
                           Alternative alt) {
  check_test_alpha(alpha);
  const SplitTable table(sample);
  const EstimateBundle bundle = estimate_bundle(sample, table);
  const double t0 = structure_stat(sample, table, hyp);
  const double statistic = t0 / bundle.delta_scale;
  const ConfidenceInterval ci =
      confidence_interval(bundle.t_hat, bundle.delta_scale, alpha);
  if (alt == Alternative::greater) {
    return upper_tail_outcome(statistic, alpha, ci);
  }
  // Two-sided: report |statistic| against z_{α/2} so reject ⇔ statistic >
  // critical_value still holds; the signed value is recoverable from T̂_{n,0}.
  TestOutcome out;
  out.statistic = std::abs(statistic);
  out.critical_value = normal_quantile(alpha / 2.0);
  out.p_value = 2.0 * (1.0 - normal_cdf(out.statistic));
  out.reject = out.statistic > out.critical_value;
  out.alpha = alpha;
  out.ci = ci;
  return out;
}

}  // namespace ecdm
