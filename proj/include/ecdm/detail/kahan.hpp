// kahan.hpp — compensated (Kahan–Babuška–Neumaier) accumulation.
//
// Pairwise sums are accumulated in a fixed lexicographic order with compensation so
// results are deterministic and reproducible bit-for-bit across runs and worker counts.
#pragma once

#include <cmath>

namespace ecdm::detail {

class KahanSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }

  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace ecdm::detail
