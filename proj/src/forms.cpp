#include "omega/forms.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace omega {

namespace {

// Index of the first coefficient that is not noise, relative to the largest.
Eigen::Index pivot_index(const Eigen::VectorXd& v) {
  const double cutoff = 1e-8 * v.cwiseAbs().maxCoeff();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v[i]) > cutoff) return i;
  }
  return 0;
}

void canonicalize_sign(Eigen::Ref<Eigen::VectorXd> v) {
  if (v[pivot_index(v)] < 0.0) v = -v;
}

struct RawPair {
  double value;
  Eigen::VectorXd vector;  // B-normalized
};

// Reorders equal-value groups by index of first nonzero coefficient. The
// paper leaves multiplicities unordered; this pins a deterministic order.
void order_ties(std::vector<RawPair>& pairs, double tie_tol) {
  std::size_t lo = 0;
  while (lo < pairs.size()) {
    std::size_t hi = lo + 1;
    while (hi < pairs.size() && std::abs(pairs[hi].value - pairs[lo].value) <= tie_tol) ++hi;
    std::sort(pairs.begin() + lo, pairs.begin() + hi, [](const RawPair& a, const RawPair& b) {
      return pivot_index(a.vector) < pivot_index(b.vector);
    });
    lo = hi;
  }
}

Eigen::MatrixXd pack(const std::vector<RawPair>& pairs, Eigen::Index n) {
  Eigen::MatrixXd out(n, static_cast<Eigen::Index>(pairs.size()));
  for (std::size_t j = 0; j < pairs.size(); ++j) out.col(static_cast<Eigen::Index>(j)) = pairs[j].vector;
  return out;
}

}  // namespace

void SpectralBasis::validate() const {
  if (eigenvalues.size() < 2) throw input_error("SpectralBasis: need at least 2 eigenvalues");
  if (manifold_dim < 1) throw input_error("SpectralBasis: manifold dimension must be positive");
  for (Eigen::Index i = 0; i < eigenvalues.size(); ++i) {
    if (!(eigenvalues[i] > 0.0)) throw input_error("SpectralBasis: eigenvalues must be strictly positive");
    if (i > 0 && eigenvalues[i] < eigenvalues[i - 1])
      throw input_error("SpectralBasis: eigenvalues must be ascending");
  }
}

void FormPair::validate() const {
  const Eigen::Index n = A.rows();
  if (n == 0 || A.cols() != n) throw input_error("FormPair: A must be square and nonempty");
  if (B.rows() != n || B.cols() != n) throw input_error("FormPair: B must match A's size");
  const double a_scale = std::max(A.cwiseAbs().maxCoeff(), 1e-300);
  if ((A - A.transpose()).cwiseAbs().maxCoeff() > 1e-12 * a_scale)
    throw input_error("FormPair: A is not symmetric (beyond 1e-12 relative)");
  const double b_scale = std::max(B.cwiseAbs().maxCoeff(), 1e-300);
  if ((B - B.transpose()).cwiseAbs().maxCoeff() > 1e-12 * b_scale)
    throw input_error("FormPair: B is not symmetric");
  Eigen::LLT<Eigen::MatrixXd> llt(0.5 * (B + B.transpose()));
  if (llt.info() != Eigen::Success) throw input_error("FormPair: B is not positive definite");
  if (basis.eigenvalues.size() > 0 && basis.eigenvalues.size() != n)
    throw input_error("FormPair: basis size does not match matrix size");
}

LambdaSpectrum solve_lambda(const FormPair& forms, const SolveOptions& opts) {
  forms.validate();
  const Eigen::Index n = forms.size();
  const Eigen::MatrixXd a = 0.5 * (forms.A + forms.A.transpose());
  const Eigen::MatrixXd b = 0.5 * (forms.B + forms.B.transpose());

  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> solver(a, b, Eigen::ComputeEigenvectors | Eigen::Ax_lBx);
  if (solver.info() != Eigen::Success) throw solver_error("solve_lambda: generalized eigen-solve failed");

  const Eigen::VectorXd values = solver.eigenvalues();  // ascending, vectors B-orthonormal
  const Eigen::MatrixXd vectors = solver.eigenvectors();

  const double max_abs = values.cwiseAbs().maxCoeff();
  const double zero_tol = opts.zero_tol_rel * max_abs;
  const double tie_tol = opts.tie_tol_rel * std::max(max_abs, 1e-300);

  std::vector<RawPair> pos, neg, zero;
  for (Eigen::Index i = 0; i < n; ++i) {
    Eigen::VectorXd v = vectors.col(i);
    const Eigen::VectorXd bv = b * v;
    const double residual = (a * v - values[i] * bv).norm();
    if (residual > opts.residual_tol * bv.norm())
      throw solver_error("solve_lambda: residual contract violated, ||Av - lBv|| = " + std::to_string(residual));
    canonicalize_sign(v);
    if (values[i] > zero_tol) {
      pos.push_back({values[i], std::move(v)});
    } else if (values[i] < -zero_tol) {
      neg.push_back({values[i], std::move(v)});
    } else {
      zero.push_back({values[i], std::move(v)});
    }
  }

  std::sort(pos.begin(), pos.end(), [](const RawPair& x, const RawPair& y) { return x.value > y.value; });
  std::sort(neg.begin(), neg.end(), [](const RawPair& x, const RawPair& y) { return x.value < y.value; });
  order_ties(pos, tie_tol);
  order_ties(neg, tie_tol);

  LambdaSpectrum out;
  out.zero_dim = static_cast<int>(zero.size());
  out.positive.reserve(pos.size());
  for (const RawPair& p : pos) out.positive.push_back(p.value);
  out.negative.reserve(neg.size());
  for (const RawPair& p : neg) out.negative.push_back(p.value);
  out.positive_vectors = pack(pos, n);
  out.negative_vectors = pack(neg, n);
  out.zero_vectors = pack(zero, n);
  return out;
}

double rayleigh(const FormPair& forms, const Eigen::VectorXd& v) {
  if (v.size() != forms.size()) throw input_error("rayleigh: vector size mismatch");
  if (v.isZero(0.0)) throw input_error("rayleigh: zero vector");
  const double num = v.dot(forms.A * v);
  const double den = v.dot(forms.B * v);
  return num / den;
}

LambdaSpectrum greedy_lambda(const FormPair& forms, int k, const SolveOptions& opts) {
  forms.validate();
  const Eigen::Index n = forms.size();
  if (k < 1 || k > n) throw input_error("greedy_lambda: k out of range");

  // Map to standard coordinates z = B^{1/2} v, where B-orthogonality is plain
  // orthogonality and the quotient becomes z^T T z / z^T z.
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> bsolver(0.5 * (forms.B + forms.B.transpose()));
  if (bsolver.info() != Eigen::Success || bsolver.eigenvalues().minCoeff() <= 0.0)
    throw input_error("greedy_lambda: B is not positive definite");
  const Eigen::VectorXd d = bsolver.eigenvalues();
  const Eigen::MatrixXd u = bsolver.eigenvectors();
  const Eigen::MatrixXd b_inv_half = u * d.cwiseSqrt().cwiseInverse().asDiagonal() * u.transpose();
  Eigen::MatrixXd t = b_inv_half * (0.5 * (forms.A + forms.A.transpose())) * b_inv_half;
  t = 0.5 * (t + t.transpose()).eval();

  // Zero threshold matches solve_lambda's scale-aware classification.
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tsolver(t, Eigen::EigenvaluesOnly);
  const double zero_tol = opts.zero_tol_rel * tsolver.eigenvalues().cwiseAbs().maxCoeff();

  std::vector<RawPair> found;
  Eigen::MatrixXd z_found(n, 0);
  for (int step = 0; step < k; ++step) {
    const Eigen::Index j = z_found.cols();
    Eigen::MatrixXd q_perp;
    if (j == 0) {
      q_perp = Eigen::MatrixXd::Identity(n, n);
    } else {
      Eigen::HouseholderQR<Eigen::MatrixXd> qr(z_found);
      const Eigen::MatrixXd q_full = qr.householderQ();
      q_perp = q_full.rightCols(n - j);
    }
    Eigen::MatrixXd m = q_perp.transpose() * t * q_perp;
    m = 0.5 * (m + m.transpose()).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> msolver(m);
    const Eigen::Index last = m.rows() - 1;
    const double top = msolver.eigenvalues()[last];
    if (top <= zero_tol) break;  // the supremum has hit the zero class
    Eigen::VectorXd z = q_perp * msolver.eigenvectors().col(last);
    z.normalize();
    Eigen::VectorXd v = b_inv_half * z;
    canonicalize_sign(v);
    found.push_back({top, std::move(v)});
    z_found.conservativeResize(n, j + 1);
    z_found.col(j) = z;
  }

  LambdaSpectrum out;
  for (const RawPair& p : found) out.positive.push_back(p.value);
  out.positive_vectors = pack(found, n);
  out.negative_vectors = Eigen::MatrixXd(n, 0);
  out.zero_vectors = Eigen::MatrixXd(n, 0);
  return out;
}

}  // namespace omega
