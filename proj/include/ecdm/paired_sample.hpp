// paired_sample.hpp — an n×p observation matrix split column-wise into two variable blocks.
#pragma once

#include <Eigen/Core>

#include "ecdm/errors.hpp"

namespace ecdm {

// Row-major throughout: observations are rows and the estimator kernels walk rows.
using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::VectorXd;

// Two blocks of jointly observed variables. Row j is observation j; columns
// [0, p1) are block 1, columns [p1, p) are block 2.
class PairedSample {
 public:
  // Takes ownership of the data. Requires n ≥ 4, 1 ≤ p1 ≤ p−1, all entries finite.
  PairedSample(Matrix data, Eigen::Index p1);

  Eigen::Index n() const { return data_.rows(); }
  Eigen::Index p() const { return data_.cols(); }
  Eigen::Index p1() const { return p1_; }
  Eigen::Index p2() const { return data_.cols() - p1_; }

  const Matrix& data() const { return data_; }
  auto block1() const { return data_.leftCols(p1_); }
  auto block2() const { return data_.rightCols(p2()); }

 private:
  Matrix data_;
  Eigen::Index p1_;
};

}  // namespace ecdm
