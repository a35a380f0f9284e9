// split_table.cpp — index-half construction and eager partial-mean caching.
#include "ecdm/split_table.hpp"

#include <string>

namespace ecdm {

IndexSets ecdm_index_sets(int n, int k) {
  if (n < 4) {
    throw ArgumentError("index sets need n >= 4, got " + std::to_string(n));
  }
  if (k < 3 || k > 2 * n - 1) {
    throw ArgumentError("pair sum k=" + std::to_string(k) +
                        " outside [3, " + std::to_string(2 * n - 1) + "]");
  }
  const int n1 = (n + 1) / 2;
  const int n2 = n - n1;
  const int f = k / 2;

  IndexSets s;
  s.v1.reserve(n1);
  s.v2.reserve(n2);
  if (f >= n1) {
    for (int i = f - n1 + 1; i <= f; ++i) s.v1.push_back(i);
  } else {
    for (int i = 1; i <= f; ++i) s.v1.push_back(i);
    for (int i = f + n2 + 1; i <= n; ++i) s.v1.push_back(i);
  }
  if (f <= n1) {
    for (int i = f + 1; i <= f + n2; ++i) s.v2.push_back(i);
  } else {
    for (int i = 1; i <= f - n1; ++i) s.v2.push_back(i);
    for (int i = f + 1; i <= n; ++i) s.v2.push_back(i);
  }
  return s;
}

SplitTable::SplitTable(const PairedSample& sample)
    : n_(static_cast<int>(sample.n())),
      n1_((n_ + 1) / 2),
      n2_(n_ - n1_),
      p_(sample.p()),
      p1_(sample.p1()) {
  u_n_ = (static_cast<double>(n1_) * n2_) /
         (static_cast<double>(n1_ - 1) * (n2_ - 1));

  const int nk = 2 * n_ - 3;  // k runs over [3, 2n−1]
  v1_.resize(nk);
  v2_.resize(nk);
  means1_.setZero(nk, p_);
  means2_.setZero(nk, p_);

  const Matrix& x = sample.data();
  for (int k = 3; k <= 2 * n_ - 1; ++k) {
    IndexSets s = ecdm_index_sets(n_, k);
    const int row = k - 3;
    for (int i : s.v1) means1_.row(row) += x.row(i - 1);
    for (int i : s.v2) means2_.row(row) += x.row(i - 1);
    means1_.row(row) /= static_cast<double>(n1_);
    means2_.row(row) /= static_cast<double>(n2_);
    v1_[row] = std::move(s.v1);
    v2_[row] = std::move(s.v2);
  }
}

int SplitTable::check_k(int k) const {
  if (k < 3 || k > 2 * n_ - 1) {
    throw ArgumentError("pair sum k=" + std::to_string(k) +
                        " outside [3, " + std::to_string(2 * n_ - 1) + "]");
  }
  return k - 3;
}

}  // namespace ecdm
