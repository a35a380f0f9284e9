// estimators.hpp — the ECDM estimators T̂_n (of ‖Σ*‖²_F) and W_in (of tr(Σ_i²)).
#pragma once

#include "ecdm/split_table.hpp"

namespace ecdm {

// One dataset's estimates. t_hat is unbiased for a nonnegative quantity and may still
// be negative; w1/w2 are u_n-weighted sums of squares and never are.
struct EstimateBundle {
  double t_hat;        // T̂_n
  double w1;           // W_1n
  double w2;           // W_2n
  double delta_scale;  // δ̂ = √(2·w1·w2)/n
  double u_n;          // n1·n2/((n1−1)(n2−1))
};

// Pairwise term Δ̂_ij for 1-based i < j: the product of the two blocks' centered
// cross-half dot products. E(Δ̂_ij) = Δ·(n1−1)(n2−1)/(n1·n2).
double pair_term(const PairedSample& sample, const SplitTable& table, int i, int j);

// T̂_n = (2·u_n/(n(n−1))) Σ_{i<j} Δ̂_ij, accumulated in fixed (i,j) order with
// compensated summation. O(n²p) including table construction.
double t_hat(const PairedSample& sample);
double t_hat(const PairedSample& sample, const SplitTable& table);

// W_in = (2·u_n/(n(n−1))) Σ_{r<s} {(x_ir − x̄_{i(1)(r+s)})ᵀ(x_is − x̄_{i(2)(r+s)})}²
// over one block's columns. block_id selects which cached means apply.
double w_stat(const Eigen::Ref<const Matrix>& block, const SplitTable& table,
              int block_id);

// T̂_n, W_1n, W_2n, δ̂ in a single pass over the pairs. Throws DegenerateScale when
// either W is zero (constant block) since δ̂ = 0 leaves every ratio undefined.
EstimateBundle estimate_bundle(const PairedSample& sample);
EstimateBundle estimate_bundle(const PairedSample& sample, const SplitTable& table);

}  // namespace ecdm
