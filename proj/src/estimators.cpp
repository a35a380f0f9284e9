// estimators.cpp — pairwise terms and the O(n²p) single-pass estimator kernel.
#include "ecdm/estimators.hpp"

#include <cmath>
#include <string>

#include "ecdm/detail/kahan.hpp"
#include "ecdm/detail/pair_kernel.hpp"

namespace ecdm {

namespace {

void check_pair(const SplitTable& table, int i, int j) {
  if (i < 1 || j > table.n() || i >= j) {
    throw ArgumentError("pair (" + std::to_string(i) + ", " + std::to_string(j) +
                        ") must satisfy 1 <= i < j <= n");
  }
}

double pair_scale(int n) { return 2.0 / (static_cast<double>(n) * (n - 1)); }

}  // namespace

double pair_term(const PairedSample& sample, const SplitTable& table, int i,
                 int j) {
  check_pair(table, i, j);
  double c1, c2;
  detail::pair_components(sample.data(), table, i, j, c1, c2);
  return c1 * c2;
}

double t_hat(const PairedSample& sample, const SplitTable& table) {
  detail::KahanSum acc;
  const int n = table.n();
  for (int i = 1; i < n; ++i) {
    for (int j = i + 1; j <= n; ++j) {
      double c1, c2;
      detail::pair_components(sample.data(), table, i, j, c1, c2);
      acc.add(table.u_n() * (c1 * c2));
    }
  }
  return pair_scale(n) * acc.value();
}

double t_hat(const PairedSample& sample) {
  return t_hat(sample, SplitTable(sample));
}

double w_stat(const Eigen::Ref<const Matrix>& block, const SplitTable& table,
              int block_id) {
  if (block_id != 1 && block_id != 2) {
    throw ArgumentError("block_id must be 1 or 2");
  }
  const Eigen::Index off = block_id == 1 ? 0 : table.p1();
  const Eigen::Index width = block_id == 1 ? table.p1() : table.p2();
  if (block.rows() != table.n() || block.cols() != width) {
    throw ArgumentError("block shape " + std::to_string(block.rows()) + "x" +
                        std::to_string(block.cols()) + " does not match block " +
                        std::to_string(block_id));
  }
  detail::KahanSum acc;
  const int n = table.n();
  for (int r = 1; r < n; ++r) {
    for (int s = r + 1; s <= n; ++s) {
      const int k = r + s;
      const double c = (block.row(r - 1) - table.mean1(k).segment(off, width))
                           .dot(block.row(s - 1) - table.mean2(k).segment(off, width));
      acc.add(table.u_n() * (c * c));
    }
  }
  return pair_scale(n) * acc.value();
}

EstimateBundle estimate_bundle(const PairedSample& sample,
                               const SplitTable& table) {
  detail::KahanSum t_acc, w1_acc, w2_acc;
  const int n = table.n();
  for (int i = 1; i < n; ++i) {
    for (int j = i + 1; j <= n; ++j) {
      double c1, c2;
      detail::pair_components(sample.data(), table, i, j, c1, c2);
      t_acc.add(table.u_n() * (c1 * c2));
      w1_acc.add(table.u_n() * (c1 * c1));
      w2_acc.add(table.u_n() * (c2 * c2));
    }
  }
  const double scale = pair_scale(n);
  EstimateBundle b;
  b.t_hat = scale * t_acc.value();
  b.w1 = scale * w1_acc.value();
  b.w2 = scale * w2_acc.value();
  b.u_n = table.u_n();
  if (!(b.w1 > 0.0)) {
    throw DegenerateScale("W_1n = 0: block 1 is constant across every split");
  }
  if (!(b.w2 > 0.0)) {
    throw DegenerateScale("W_2n = 0: block 2 is constant across every split");
  }
  b.delta_scale = std::sqrt(2.0 * b.w1 * b.w2) / n;
  return b;
}

EstimateBundle estimate_bundle(const PairedSample& sample) {
  return estimate_bundle(sample, SplitTable(sample));
}

}  // namespace ecdm
