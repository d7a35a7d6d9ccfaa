#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "omega/errors.hpp"

namespace omega {

/// Truncated Laplacian eigenbasis {lambda_j, psi_j} of a closed manifold,
/// analytic or discrete. The zero eigenvalue of constants is excluded, so the
/// span models the mean-zero space H.
struct SpectralBasis {
  int manifold_dim = 0;
  Eigen::VectorXd eigenvalues;  // ascending, strictly positive
  std::string provenance;
  bool orthonormal = true;  // integral of psi_i psi_j equals delta_ij

  void validate() const;
};

/// Gram matrices of the two quadratic forms on a SpectralBasis:
///   A_ij = integral of S(grad psi_i, grad psi_j),
///   B_ij = integral of (Lap psi_i)(Lap psi_j).
/// On an L2-orthonormal eigenbasis B is diag(lambda_j^2).
struct FormPair {
  Eigen::MatrixXd A;
  Eigen::MatrixXd B;
  SpectralBasis basis;  // eigenvalues may be empty for synthetic pencils

  Eigen::Index size() const { return A.rows(); }
  void validate() const;  // symmetry of A (1e-12 relative), B symmetric positive definite
};

/// Signed spectrum of the pencil (A, B): the Galerkin restriction of the
/// variational values for the form S, classified by sign. Coefficient vectors
/// are B-normalized (v^T B v = 1) and canonicalized so the first significant
/// coefficient is positive.
struct LambdaSpectrum {
  std::vector<double> positive;  // descending, all > 0
  std::vector<double> negative;  // ascending by value (most negative first)
  int zero_dim = 0;
  Eigen::MatrixXd positive_vectors;  // N x positive.size()
  Eigen::MatrixXd negative_vectors;  // N x negative.size()
  Eigen::MatrixXd zero_vectors;      // N x zero_dim

  Eigen::Index total() const {
    return static_cast<Eigen::Index>(positive.size() + negative.size()) + zero_dim;
  }
};

struct SolveOptions {
  double zero_tol_rel = 1e-10;  // |value| <= zero_tol_rel * max|value|  classifies as zero
  double residual_tol = 1e-9;   // ||A v - value B v|| <= residual_tol * ||B v||
  double tie_tol_rel = 1e-12;   // values this close share a multiplicity group
};

/// All N generalized eigenvalues of (A, B), classified by sign.
LambdaSpectrum solve_lambda(const FormPair& forms, const SolveOptions& opts = {});

/// (v^T A v) / (v^T B v). Scale invariant; rejects the zero vector.
double rayleigh(const FormPair& forms, const Eigen::VectorXd& v);

/// Direct implementation of the inductive sup-over-orthogonal-complement
/// definition: repeatedly maximizes the Rayleigh quotient over the
/// B-orthogonal complement of the vectors found so far, via a projected dense
/// eigen-solve. Stops early once the supremum drops to the zero threshold.
/// Serves as an oracle for the positive part of solve_lambda.
LambdaSpectrum greedy_lambda(const FormPair& forms, int k, const SolveOptions& opts = {});

}  // namespace omega
