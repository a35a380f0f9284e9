// pair_kernel.hpp — the centered cross-half dot products behind every pairwise term.
//
// Shared by the estimators and the structure statistic so that reductions which must
// agree bitwise (e.g. T̂_{n,0} with Σ₀ = O versus T̂_n) run the identical arithmetic.
#pragma once

#include "ecdm/split_table.hpp"

namespace ecdm::detail {

// For the 1-based pair i < j with k = i + j, computes per block l ∈ {1,2}
//   c_l = (x_{li} − x̄_{l(1)(k)})ᵀ (x_{lj} − x̄_{l(2)(k)}).
// Δ̂_ij is then c1·c2, and the squared factors c_l² feed W_ln.
inline void pair_components(const Matrix& data, const SplitTable& table, int i,
                            int j, double& c1, double& c2) {
  const int k = i + j;
  const auto m1 = table.mean1(k);
  const auto m2 = table.mean2(k);
  const auto p1 = table.p1();
  const auto p2 = table.p2();
  const auto ri = data.row(i - 1);
  const auto rj = data.row(j - 1);
  c1 = (ri.head(p1) - m1.head(p1)).dot(rj.head(p1) - m2.head(p1));
  c2 = (ri.tail(p2) - m1.tail(p2)).dot(rj.tail(p2) - m2.tail(p2));
}

}  // namespace ecdm::detail
