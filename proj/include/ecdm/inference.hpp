// inference.hpp — tests, confidence interval, and diagnostics built on the estimators.
#pragma once

#include "ecdm/estimators.hpp"

namespace ecdm {

// Two-sided 1−α interval for Δ, lower end clamped at zero. When even the upper end
// falls below zero the interval is reported as [0, 0] with the degenerate flag set
// rather than as an inverted range.
struct ConfidenceInterval {
  double lower;
  double upper;
  bool degenerate;

  // Degenerate intervals cover nothing.
  bool contains(double v) const {
    return !degenerate && lower <= v && v <= upper;
  }
};

// One test decision. reject ⇔ statistic > critical_value, always; the two-sided
// structure-test variant reports |T̂_{n,0}|/δ̂ as its statistic so the same rule holds.
struct TestOutcome {
  double statistic;
  double critical_value;  // z_α (or z_{α/2} for the two-sided variant)
  double p_value;
  bool reject;
  double alpha;
  ConfidenceInterval ci;
};

// Assumption/association diagnostics for one dataset.
struct Diagnostics {
  double kappa;        // κ̂ = w1·w2/(n·T̂_n)²
  bool kappa_small;    // κ̂ < threshold: the strong-signal (consistency) regime
  double threshold;
  double rv;           // ρ̂ = T̂_n/√(w1·w2), reported raw (can leave [0,1])
  double rv_clamped;   // companion clamped to [0,1]
};

// Candidate cross-covariance structure Σ₀ (p1×p2) for H₀: Σ* = Σ₀.
struct StructureHypothesis {
  explicit StructureHypothesis(Matrix sigma0_in);

  Matrix sigma0;
  double norm_sq;  // ‖Σ₀‖²_F
};

// One-sided test of H₀: P = O at level alpha ∈ (0, 0.5): reject when T̂_n/δ̂ > z_α
// (strict). Includes the 1−α confidence interval for Δ.
TestOutcome correlation_test(const EstimateBundle& bundle, double alpha);
TestOutcome correlation_test(const PairedSample& sample, double alpha);

// I = [max(T̂_n − z_{α/2}·δ̂, 0), T̂_n + z_{α/2}·δ̂]. Requires delta_scale > 0,
// alpha ∈ (0, 1).
ConfidenceInterval confidence_interval(double t_hat, double delta_scale,
                                       double alpha);

// κ̂ = w1·w2/(n·T̂_n)². Separates the consistency regime (κ̂ small) from the
// normal-fluctuation regime. Throws UndefinedDiagnostic when T̂_n = 0.
double kappa_hat(const EstimateBundle& bundle, int n);

// ρ̂ = T̂_n/√(w1·w2), the estimated RV-coefficient. Throws DegenerateScale when
// w1·w2 = 0. Identity: ρ̂ = (T̂_n/δ̂)·√2/n.
double rv_hat(const EstimateBundle& bundle);

Diagnostics diagnostics(const EstimateBundle& bundle, int n,
                        double kappa_threshold = 0.01);

// T̂_{n,0}: unbiased for Δ₀ = ‖Σ* − Σ₀‖²_F. With Σ₀ = O this reduces to t_hat,
// bitwise. Cost O(n·p1·p2 + n²·p).
double structure_stat(const PairedSample& sample, const SplitTable& table,
                      const StructureHypothesis& hyp);
double structure_stat(const PairedSample& sample, const StructureHypothesis& hyp);

enum class Alternative {
  greater,    // reject when T̂_{n,0}/δ̂ > z_α — mirrors the correlation test
  two_sided,  // reject when |T̂_{n,0}|/δ̂ > z_{α/2}
};

// Test of H₀: Σ* = Σ₀ using T̂_{n,0}/δ̂ with δ̂ from estimate_bundle.
TestOutcome structure_test(const PairedSample& sample,
                           const StructureHypothesis& hyp, double alpha,
                           Alternative alt = Alternative::greater);

}  // namespace ecdm
