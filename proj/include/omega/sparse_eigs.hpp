#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace omega {

struct SmallestEigs {
  Eigen::VectorXd values;   // ascending
  Eigen::MatrixXd vectors;  // orthonormal columns
};

/// Smallest `count` eigenpairs of a symmetric positive semidefinite sparse
/// matrix, by Lanczos with full reorthogonalization applied to the
/// shift-inverted operator (C + eps I)^{-1} (one sparse LDLT factorization).
/// The Krylov dimension grows until every requested pair meets
/// ||C x - value x|| <= tol * max(||C x||, scale); otherwise throws
/// solver_error with the achieved residuals.
SmallestEigs smallest_eigenpairs(const Eigen::SparseMatrix<double>& c, int count, double tol = 1e-10);

}  // namespace omega
