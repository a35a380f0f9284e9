// paired_sample.cpp — construction-time validation of the sample invariants.
#include "ecdm/paired_sample.hpp"

#include <string>
#include <utility>

namespace ecdm {

PairedSample::PairedSample(Matrix data, Eigen::Index p1)
    : data_(std::move(data)), p1_(p1) {
  if (data_.rows() < 4) {
    throw ArgumentError("sample needs at least 4 observations, got " +
                        std::to_string(data_.rows()));
  }
  if (p1_ < 1 || p1_ > data_.cols() - 1) {
    throw ArgumentError("block split p1=" + std::to_string(p1_) +
                        " must lie in [1, " + std::to_string(data_.cols() - 1) +
                        "]");
  }
  if (!data_.allFinite()) {
    throw ArgumentError("sample contains non-finite entries");
  }
}

}  // namespace ecdm
