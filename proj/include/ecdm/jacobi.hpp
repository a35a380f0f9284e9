// jacobi.hpp — symmetric eigendecomposition by the cyclic Jacobi method.
#pragma once

#include "ecdm/paired_sample.hpp"

namespace ecdm {

// Σ = H Λ Hᵀ with eigenvalues sorted descending and orthonormal eigenvector columns.
struct SymEig {
  Vector values;
  Matrix vectors;  // column j pairs with values[j]
};

// Cyclic Jacobi sweeps until the off-diagonal Frobenius mass falls below
// tol·‖A‖_F (default 1e−12), giving reconstruction residual ≤ 1e−10 relative.
// Throws ArgumentError when the input is not symmetric.
SymEig sym_eig(const Matrix& a, double tol = 1e-12);

}  // namespace ecdm
