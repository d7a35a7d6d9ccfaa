#pragma once

// Independent oracles used by the test suites. Everything here is deliberately
// written against first principles (Jacobi rotations, brute-force enumeration,
// polynomial ranks) so it shares no code path with the library being tested.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

namespace oracles {

// Cyclic Jacobi eigenvalue iteration for a dense symmetric matrix.
// Returns eigenvalues sorted ascending.
inline std::vector<double> jacobi_eigenvalues(Eigen::MatrixXd m, int max_sweeps = 64) {
  const Eigen::Index n = m.rows();
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double off = 0.0;
    for (Eigen::Index p = 0; p < n; ++p)
      for (Eigen::Index q = p + 1; q < n; ++q) off += m(p, q) * m(p, q);
    if (std::sqrt(off) < 1e-15 * std::max(1.0, m.cwiseAbs().maxCoeff())) break;
    for (Eigen::Index p = 0; p < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        if (m(p, q) == 0.0) continue;
        const double theta = (m(q, q) - m(p, p)) / (2.0 * m(p, q));
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        Eigen::VectorXd row_p = m.row(p), row_q = m.row(q);
        m.row(p) = c * row_p - s * row_q;
        m.row(q) = s * row_p + c * row_q;
        Eigen::VectorXd col_p = m.col(p), col_q = m.col(q);
        m.col(p) = c * col_p - s * col_q;
        m.col(q) = s * col_p + c * col_q;
      }
    }
  }
  std::vector<double> values(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) values[static_cast<std::size_t>(i)] = m(i, i);
  std::sort(values.begin(), values.end());
  return values;
}

// Symmetric inverse square root via Jacobi rotations (eigenvectors tracked
// explicitly so the oracle stays independent of Eigen's eigensolvers).
inline Eigen::MatrixXd jacobi_inv_sqrt(Eigen::MatrixXd m, int max_sweeps = 64) {
  const Eigen::Index n = m.rows();
  Eigen::MatrixXd v = Eigen::MatrixXd::Identity(n, n);
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double off = 0.0;
    for (Eigen::Index p = 0; p < n; ++p)
      for (Eigen::Index q = p + 1; q < n; ++q) off += m(p, q) * m(p, q);
    if (std::sqrt(off) < 1e-15 * std::max(1.0, m.cwiseAbs().maxCoeff())) break;
    for (Eigen::Index p = 0; p < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        if (m(p, q) == 0.0) continue;
        const double theta = (m(q, q) - m(p, p)) / (2.0 * m(p, q));
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        Eigen::VectorXd row_p = m.row(p), row_q = m.row(q);
        m.row(p) = c * row_p - s * row_q;
        m.row(q) = s * row_p + c * row_q;
        Eigen::VectorXd col_p = m.col(p), col_q = m.col(q);
        m.col(p) = c * col_p - s * col_q;
        m.col(q) = s * col_p + c * col_q;
        Eigen::VectorXd v_p = v.col(p), v_q = v.col(q);
        v.col(p) = c * v_p - s * v_q;
        v.col(q) = s * v_p + c * v_q;
      }
    }
  }
  Eigen::VectorXd d(n);
  for (Eigen::Index i = 0; i < n; ++i) d[i] = 1.0 / std::sqrt(m(i, i));
  return v * d.asDiagonal() * v.transpose();
}

// Random symmetric matrix with entries in [-1, 1].
inline Eigen::MatrixXd random_symmetric(Eigen::Index n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i; j < n; ++j) m(i, j) = m(j, i) = unit(rng);
  return m;
}

// Random symmetric positive definite matrix, G^T G + eps I.
inline Eigen::MatrixXd random_spd(Eigen::Index n, std::mt19937_64& rng, double ridge = 0.5) {
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  Eigen::MatrixXd g(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) g(i, j) = unit(rng);
  return g.transpose() * g + ridge * Eigen::MatrixXd::Identity(n, n);
}

// Pencil with a prescribed generalized spectrum: builds A = B V diag(s) V^T B
// with V^T B V = I, so that A v_i = s_i B v_i exactly (up to rounding).
inline Eigen::MatrixXd pencil_with_spectrum(const Eigen::MatrixXd& b, const Eigen::VectorXd& s,
                                            std::mt19937_64& rng) {
  const Eigen::Index n = b.rows();
  Eigen::MatrixXd raw(n, n);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) raw(i, j) = gauss(rng);
  // Gram-Schmidt in the B inner product.
  Eigen::MatrixXd v(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    Eigen::VectorXd w = raw.col(j);
    for (Eigen::Index i = 0; i < j; ++i) w -= (v.col(i).dot(b * w)) * v.col(i);
    v.col(j) = w / std::sqrt(w.dot(b * w));
  }
  Eigen::MatrixXd a = b * v * s.asDiagonal() * v.transpose() * b;
  return 0.5 * (a + a.transpose());
}

// Dimension of degree-k homogeneous harmonic polynomials in `vars` variables,
// computed as dim P_k - rank(Laplacian: P_k -> P_{k-2}) by brute force over
// the monomial basis. Oracle for sphere eigenvalue multiplicities.
inline int harmonic_dimension(int vars, int k) {
  // Enumerate exponent multi-indices of total degree d.
  auto monomials = [vars](int d) {
    std::vector<std::vector<int>> out;
    std::vector<int> e(static_cast<std::size_t>(vars), 0);
    // Odometer over compositions of d into `vars` parts.
    std::function<void(int, int)> rec = [&](int pos, int left) {
      if (pos == vars - 1) {
        e[static_cast<std::size_t>(pos)] = left;
        out.push_back(e);
        return;
      }
      for (int take = 0; take <= left; ++take) {
        e[static_cast<std::size_t>(pos)] = take;
        rec(pos + 1, left - take);
      }
    };
    rec(0, d);
    return out;
  };
  const auto mk = monomials(k);
  if (k < 2) return static_cast<int>(mk.size());
  const auto mk2 = monomials(k - 2);
  auto index_of = [&mk2](const std::vector<int>& e) {
    for (std::size_t i = 0; i < mk2.size(); ++i)
      if (mk2[i] == e) return static_cast<Eigen::Index>(i);
    return static_cast<Eigen::Index>(-1);
  };
  Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(mk2.size()),
                                              static_cast<Eigen::Index>(mk.size()));
  for (std::size_t j = 0; j < mk.size(); ++j) {
    for (int v = 0; v < vars; ++v) {
      const int ev = mk[j][static_cast<std::size_t>(v)];
      if (ev < 2) continue;
      std::vector<int> e = mk[j];
      e[static_cast<std::size_t>(v)] -= 2;
      lap(index_of(e), static_cast<Eigen::Index>(j)) += ev * (ev - 1);
    }
  }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(lap);
  lu.setThreshold(1e-10);
  return static_cast<int>(mk.size()) - static_cast<int>(lu.rank());
}

}  // namespace oracles
