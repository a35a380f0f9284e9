// baselines.hpp — Srivastava–Reid estimators: the sample-covariance competitor.
#pragma once

#include <optional>

#include "ecdm/inference.hpp"
#include "ecdm/paired_sample.hpp"

namespace ecdm {

// Sample-covariance-based estimates. The bias-corrected W_{i(SR)} can go negative,
// in which case the scale δ̂_SR is undefined and left empty.
struct SrBundle {
  double delta_sr;  // Δ̂_SR
  double w1_sr;     // W_{1(SR)}
  double w2_sr;     // W_{2(SR)}
  std::optional<double> delta_scale_sr;  // δ̂_SR = √(2·w1_sr·w2_sr)/n when w1·w2 > 0
};

// Δ̂_SR = c_n (tr(S*S*ᵀ) − tr(S₁)tr(S₂)/(n−1)), c_n = (n−1)²/((n−2)(n+1)).
// Evaluated through centered Gram matrices: O(n²p) time, no p1×p2 product stored.
double sr_delta(const PairedSample& sample);

// W_{i(SR)} = c_n (tr(S_i²) − tr(S_i)²/(n−1)) for one block with n observations.
double sr_w(const Eigen::Ref<const Matrix>& block, int n);

SrBundle sr_bundle(const PairedSample& sample);

// Δ̂_SR/δ̂_SR against z_α, exactly as the correlation test. Throws NonpositiveScale
// when w1_sr·w2_sr ≤ 0. The outcome carries no confidence interval (degenerate ci).
TestOutcome sr_test(const PairedSample& sample, double alpha);

}  // namespace ecdm
