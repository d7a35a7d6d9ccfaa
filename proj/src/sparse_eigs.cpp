#include "omega/sparse_eigs.hpp"

#include <Eigen/SparseCholesky>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "omega/errors.hpp"

namespace omega {

namespace {

// Deterministic start vector (fixed xorshift stream, independent of libstdc++
// distribution internals).
Eigen::VectorXd deterministic_unit(Eigen::Index n) {
  Eigen::VectorXd v(n);
  std::uint64_t state = 0x9e3779b97f4a7c15ULL;
  for (Eigen::Index i = 0; i < n; ++i) {
    state ^= state << 13;
    state ^= state >> 7;
    state ^= state << 17;
    v[i] = static_cast<double>(state >> 11) / static_cast<double>(1ULL << 53) - 0.5;
  }
  v.normalize();
  return v;
}

}  // namespace

SmallestEigs smallest_eigenpairs(const Eigen::SparseMatrix<double>& c, int count, double tol) {
  const Eigen::Index n = c.rows();
  if (count < 1 || count >= n) throw input_error("smallest_eigenpairs: count out of range");

  const double scale = c.diagonal().sum() / static_cast<double>(n);
  const double eps = std::max(1e-8 * scale, 1e-14);
  Eigen::SparseMatrix<double> shifted = c;
  for (Eigen::Index i = 0; i < n; ++i) shifted.coeffRef(i, i) += eps;
  shifted.makeCompressed();
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> factor(shifted);
  if (factor.info() != Eigen::Success) throw solver_error("smallest_eigenpairs: factorization failed");

  int m = std::min<int>(static_cast<int>(n), std::max(2 * count + 30, 60));
  const int m_cap = std::min<int>(static_cast<int>(n), std::max(8 * count, 400));

  std::string residual_note;
  while (true) {
    Eigen::MatrixXd basis(n, m);
    Eigen::VectorXd alpha(m), beta(m);
    Eigen::VectorXd v = deterministic_unit(n);
    Eigen::VectorXd prev = Eigen::VectorXd::Zero(n);
    double beta_prev = 0.0;
    int built = 0;
    for (int j = 0; j < m; ++j) {
      basis.col(j) = v;
      ++built;
      Eigen::VectorXd w = factor.solve(v);
      alpha[j] = v.dot(w);
      w -= alpha[j] * v + beta_prev * prev;
      // Full reorthogonalization, twice for robustness.
      w -= basis.leftCols(j + 1) * (basis.leftCols(j + 1).transpose() * w);
      w -= basis.leftCols(j + 1) * (basis.leftCols(j + 1).transpose() * w);
      const double norm = w.norm();
      if (j + 1 == m) break;
      if (norm < 1e-13) {
        // Invariant subspace exhausted; continue with a fresh direction.
        Eigen::VectorXd fresh = deterministic_unit(n).cwiseProduct(
            Eigen::VectorXd::LinSpaced(n, 0.5, 1.5));
        fresh -= basis.leftCols(j + 1) * (basis.leftCols(j + 1).transpose() * fresh);
        if (fresh.norm() < 1e-13) {
          m = j + 1;
          break;
        }
        beta[j] = 0.0;
        prev = v;
        beta_prev = 0.0;
        v = fresh.normalized();
      } else {
        beta[j] = norm;
        prev = v;
        beta_prev = norm;
        v = w / norm;
      }
    }
    m = built;

    Eigen::MatrixXd tri = Eigen::MatrixXd::Zero(m, m);
    for (int j = 0; j < m; ++j) {
      tri(j, j) = alpha[j];
      if (j + 1 < m) tri(j, j + 1) = tri(j + 1, j) = beta[j];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ritz(tri);

    // Largest theta of the inverted operator correspond to the smallest
    // eigenvalues of C.
    SmallestEigs out;
    out.values.resize(count);
    out.vectors.resize(n, count);
    bool converged = true;
    residual_note.clear();
    for (int k = 0; k < count; ++k) {
      const int col = m - 1 - k;
      const double theta = ritz.eigenvalues()[col];
      const double lambda = 1.0 / theta - eps;
      Eigen::VectorXd x = basis.leftCols(m) * ritz.eigenvectors().col(col);
      x.normalize();
      const Eigen::VectorXd cx = c * x;
      const double residual = (cx - lambda * x).norm();
      if (residual > tol * std::max(cx.norm(), scale)) {
        converged = false;
        residual_note = "pair " + std::to_string(k) + " residual " + std::to_string(residual);
        break;
      }
      out.values[count - 1 - k] = lambda;
      out.vectors.col(count - 1 - k) = x;
    }
    if (converged) return out;
    if (m >= m_cap)
      throw solver_error("smallest_eigenpairs: no convergence at Krylov dimension " + std::to_string(m) +
                         " (" + residual_note + ")");
    m = std::min<int>(m_cap, m + m / 2 + 10);
  }
}

}  // namespace omega
