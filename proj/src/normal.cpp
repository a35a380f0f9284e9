// normal.cpp — Φ via the complementary error function; quantile by safeguarded Newton.
#include "ecdm/normal.hpp"

#include <cmath>
#include <string>

#include "ecdm/errors.hpp"

namespace ecdm {

namespace {
constexpr double kInvSqrt2 = 0.70710678118654752440;
constexpr double kInvSqrt2Pi = 0.39894228040143267794;

double normal_pdf(double x) { return kInvSqrt2Pi * std::exp(-0.5 * x * x); }
}  // namespace

double normal_cdf(double x) {
  if (std::isnan(x)) {
    throw ArgumentError("normal_cdf: NaN argument");
  }
  return 0.5 * std::erfc(-x * kInvSqrt2);
}

double normal_quantile(double a) {
  if (!(a > 0.0 && a < 1.0)) {
    throw ArgumentError("normal_quantile: a=" + std::to_string(a) +
                        " outside (0, 1)");
  }
  if (a == 0.5) return 0.0;
  // Work in the upper tail (a < 0.5) and mirror, so the bracket is one-sided.
  if (a > 0.5) return -normal_quantile(1.0 - a);

  const double target = 1.0 - a;  // Φ(z) = target, z > 0
  double lo = 0.0, hi = 1.0;
  while (normal_cdf(hi) < target) {
    lo = hi;
    hi *= 2.0;  // a > 1e−300 keeps this bounded (hi ≲ 40)
  }
  double z = 0.5 * (lo + hi);
  for (int it = 0; it < 100; ++it) {
    const double err = normal_cdf(z) - target;
    if (err > 0.0) {
      hi = z;
    } else if (err < 0.0) {
      lo = z;
    } else {
      return z;
    }
    const double step = err / normal_pdf(z);
    double next = z - step;
    if (!(next > lo && next < hi)) {
      next = 0.5 * (lo + hi);  // Newton left the bracket; bisect instead
    }
    if (std::abs(next - z) <= 1e-15 * std::max(1.0, std::abs(z))) {
      return next;
    }
    z = next;
  }
  return z;
}

}  // namespace ecdm
