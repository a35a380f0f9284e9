// jacobi.cpp — cyclic Jacobi sweeps with the standard stabilized rotation updates.
#include "ecdm/jacobi.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace ecdm {

namespace {

double off_diagonal_norm(const Matrix& a) {
  const Eigen::Index m = a.rows();
  double sum = 0.0;
  for (Eigen::Index p = 0; p < m - 1; ++p) {
    for (Eigen::Index q = p + 1; q < m; ++q) {
      sum += a(p, q) * a(p, q);
    }
  }
  return std::sqrt(2.0 * sum);
}

}  // namespace

SymEig sym_eig(const Matrix& a, double tol) {
  const Eigen::Index m = a.rows();
  if (a.cols() != m) {
    throw ArgumentError("sym_eig needs a square matrix");
  }
  const double scale = a.cwiseAbs().maxCoeff();
  if (((a - a.transpose()).cwiseAbs().maxCoeff()) >
      1e-12 * std::max(1.0, scale)) {
    throw ArgumentError("sym_eig needs a symmetric matrix");
  }

  Matrix w = a;
  Matrix v = Matrix::Identity(m, m);
  const double threshold = tol * a.norm();

  bool converged = off_diagonal_norm(w) <= threshold;
  for (int sweep = 0; sweep < 100 && !converged; ++sweep) {
    for (Eigen::Index p = 0; p < m - 1; ++p) {
      for (Eigen::Index q = p + 1; q < m; ++q) {
        const double apq = w(p, q);
        if (apq == 0.0) continue;
        const double theta = (w(q, q) - w(p, p)) / (2.0 * apq);
        double t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        if (theta < 0.0) t = -t;
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const double tau = s / (1.0 + c);

        w(p, p) -= t * apq;
        w(q, q) += t * apq;
        w(p, q) = 0.0;
        w(q, p) = 0.0;
        for (Eigen::Index r = 0; r < m; ++r) {
          if (r == p || r == q) continue;
          const double g = w(r, p);
          const double h = w(r, q);
          w(r, p) = g - s * (h + tau * g);
          w(p, r) = w(r, p);
          w(r, q) = h + s * (g - tau * h);
          w(q, r) = w(r, q);
        }
        for (Eigen::Index r = 0; r < m; ++r) {
          const double g = v(r, p);
          const double h = v(r, q);
          v(r, p) = c * g - s * h;
          v(r, q) = s * g + c * h;
        }
      }
    }
    converged = off_diagonal_norm(w) <= threshold;
  }
  if (!converged) {
    throw Error("sym_eig: Jacobi sweeps did not converge");
  }

  std::vector<Eigen::Index> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index i, Eigen::Index j) {
    return w(i, i) > w(j, j);
  });

  SymEig out;
  out.values.resize(m);
  out.vectors.resize(m, m);
  for (Eigen::Index j = 0; j < m; ++j) {
    out.values[j] = w(order[j], order[j]);
    out.vectors.col(j) = v.col(order[j]);
  }
  return out;
}

}  // namespace ecdm
