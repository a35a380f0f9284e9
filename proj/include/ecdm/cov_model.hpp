// cov_model.hpp — the benchmark covariance construction Σ_i = B(base^{|j−k|^{1/3}})B.
#pragma once

#include <utility>

#include "ecdm/paired_sample.hpp"

namespace ecdm {

// Block covariance description. With scaled set, B = diag[{0.5 + j/(p_i+1)}^{1/2}]
// reweights the coordinates so that tr(Σ_i) = p_i; unscaled means B = I.
struct CovSpec {
  int p1;
  int p2;
  double base1 = 0.3;
  double base2 = 0.4;
  bool scaled = true;
};

// One block: Σ[j,k] = b_j·b_k·base^{|j−k|^{1/3}} (1-based j, k).
Matrix build_sigma_block(int p, double base, bool scaled);

// Both blocks of a CovSpec.
std::pair<Matrix, Matrix> build_sigma(const CovSpec& spec);

}  // namespace ecdm
