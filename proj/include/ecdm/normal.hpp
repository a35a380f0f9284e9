// normal.hpp — standard normal CDF and upper-tail quantile.
#pragma once

namespace ecdm {

// Φ(x), absolute error ≤ 1e−9 (in practice ≈ machine precision via erfc).
double normal_cdf(double x);

// Upper-tail critical value z_a with P(N(0,1) > z_a) = a, i.e. Φ(z_a) = 1 − a.
// Monotone root-find on the CDF; |Φ(result) − (1−a)| ≤ 1e−8 guaranteed.
// Throws ArgumentError unless 0 < a < 1.
double normal_quantile(double a);

}  // namespace ecdm
