// cov_model.cpp — covariance construction for the simulation benchmarks.
#include "ecdm/cov_model.hpp"

#include <cmath>
#include <string>

namespace ecdm {

Matrix build_sigma_block(int p, double base, bool scaled) {
  if (p < 1) {
    throw ArgumentError("covariance block needs p >= 1");
  }
  if (!(base > 0.0 && base < 1.0)) {
    throw ArgumentError("decay base " + std::to_string(base) +
                        " outside (0, 1)");
  }
  Vector b = Vector::Ones(p);
  if (scaled) {
    for (int j = 0; j < p; ++j) {
      b[j] = std::sqrt(0.5 + static_cast<double>(j + 1) / (p + 1));
    }
  }
  Matrix sigma(p, p);
  for (int j = 0; j < p; ++j) {
    sigma(j, j) = b[j] * b[j];
    for (int k = j + 1; k < p; ++k) {
      const double rho = std::pow(base, std::cbrt(static_cast<double>(k - j)));
      const double value = b[j] * b[k] * rho;
      sigma(j, k) = value;
      sigma(k, j) = value;
    }
  }
  return sigma;
}

std::pair<Matrix, Matrix> build_sigma(const CovSpec& spec) {
  return {build_sigma_block(spec.p1, spec.base1, spec.scaled),
          build_sigma_block(spec.p2, spec.base2, spec.scaled)};
}

}  // namespace ecdm
