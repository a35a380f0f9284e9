// split_table.hpp — per-k sample halves V(1)(k)/V(2)(k) and cached partial means.
//
// For every pair sum k = i + j the sample indices {1,…,n} split into two disjoint
// halves of sizes n1 = ⌈n/2⌉ and n2 = n − n1, arranged so that i falls in the first
// half and j in the second for every pair i < j. Centering observation i by the mean
// of the opposite half removes the mean without coupling the two factors of a pairwise
// product, which is what makes the estimators exactly unbiased.
#pragma once

#include <vector>

#include "ecdm/paired_sample.hpp"

namespace ecdm {

// The two index halves for one pair sum. Indices are 1-based, ascending.
struct IndexSets {
  std::vector<int> v1;
  std::vector<int> v2;
};

// Piecewise definition of (V(1)(k), V(2)(k)) for n ≥ 4, k ∈ [3, 2n−1], around the
// pivot f = ⌊k/2⌋:
//   V1 = {f−n1+1,…,f}            if f ≥ n1, else {1,…,f} ∪ {f+n2+1,…,n}
//   V2 = {f+1,…,f+n2}            if f ≤ n1, else {1,…,f−n1} ∪ {f+1,…,n}
IndexSets ecdm_index_sets(int n, int k);

// All 2n−3 index splits for one sample plus the half-sample means of every column,
// cached so the pairwise estimators cost O(n²p) total. Immutable once built.
class SplitTable {
 public:
  explicit SplitTable(const PairedSample& sample);

  int n() const { return n_; }
  int n1() const { return n1_; }
  int n2() const { return n2_; }
  Eigen::Index p1() const { return p1_; }
  Eigen::Index p2() const { return p_ - p1_; }
  // u_n = n1·n2/((n1−1)(n2−1)); cancels the finite-sample bias factor of Δ̂_ij.
  double u_n() const { return u_n_; }

  // 1-based membership lists for pair sum k ∈ [3, 2n−1].
  const std::vector<int>& v1(int k) const { return v1_[check_k(k)]; }
  const std::vector<int>& v2(int k) const { return v2_[check_k(k)]; }

  // Mean over the v1(k) / v2(k) rows of the full p-length observation row.
  // Block views are column segments: [0, p1) and [p1, p).
  auto mean1(int k) const { return means1_.row(check_k(k)); }
  auto mean2(int k) const { return means2_.row(check_k(k)); }

 private:
  int check_k(int k) const;

  int n_, n1_, n2_;
  Eigen::Index p_, p1_;
  double u_n_;
  std::vector<std::vector<int>> v1_, v2_;
  Matrix means1_, means2_;  // row (k−3) holds the k-split means
};

}  // namespace ecdm
