#pragma once

#include <Eigen/Dense>
#include <functional>
#include <string>
#include <vector>

#include "omega/forms.hpp"

namespace omega {

/// Symmetric (0,2)-tensor field on a flat torus, tabulated on a uniform grid
/// (row-major over axes). `bandwidth` is the per-axis frequency content when
/// known (constant and trigonometric fields); -1 means not band-limited or
/// unknown, in which case quadrature is grid-resolved rather than exact.
struct TorusField {
  std::vector<double> periods;
  int grid_size = 64;  // per axis, power of two >= 16
  int bandwidth = -1;
  std::vector<Eigen::MatrixXd> samples;
  std::function<Eigen::MatrixXd(const Eigen::VectorXd&)> evaluate;  // off-grid evaluation

  int dim() const { return static_cast<int>(periods.size()); }
  double volume() const;
  long total_points() const;
  void validate() const;
};

/// Sample an analytic field on the grid. `bandwidth` as in TorusField.
TorusField tabulate_field(const std::vector<double>& periods, int grid_size,
                          const std::function<Eigen::MatrixXd(const Eigen::VectorXd&)>& fn, int bandwidth = -1);

/// Named field families used by the CLI and the test suites:
///   identity | neg-identity | diag:c1,c2,... | cap | indefinite |
///   scalar-cos:a,b,m1,...,mn
TorusField builtin_field(const std::string& spec, const std::vector<double>& periods, int grid_size);

/// Grid file: one CSV row per grid point in row-major order, upper-triangle
/// tensor entries per row. Off-grid evaluation is periodic multilinear.
TorusField load_field_csv(const std::string& path, const std::vector<double>& periods);

/// One real Fourier basis function: the cos (is_sin = false) or sin member of
/// the representative lattice vector m, with eigenvalue sum_j (2 pi m_j/p_j)^2.
struct FourierMode {
  std::vector<int> m;
  bool is_sin = false;
  double lambda = 0.0;
};

/// Quadrature assembly of the S-form Gram on the orthonormal Fourier basis up
/// to |m_j| <= max_freq, with B = diag(lambda^2). Errors when a declared field
/// bandwidth exceeds what the grid can integrate exactly for this basis.
std::pair<FormPair, std::vector<FourierMode>> fourier_forms(const TorusField& field, int max_freq);

/// Full pipeline into solve_lambda; positive/negative lists trimmed to `top`.
LambdaSpectrum fourier_omega(const TorusField& field, int max_freq, int top);

/// Oscillatory family psi(xi) sin((K+a) N xi1), a = 1..k, centered where the
/// field is most positive; xi1 is the coordinate along the positive direction.
struct ProbeFamily {
  int k = 1;
  int K = 1;           // frequency offset
  int patch_freq = 1;  // N: support is (-2pi/N, 2pi/N)^n, plateau [-pi/N, pi/N]^n
  Eigen::VectorXd center;
  Eigen::VectorXd direction;  // unit
};

/// Gram matrices of the family under the S-form and the biharmonic form,
/// integrated over the patch.
Eigen::MatrixXd probe_gram(const TorusField& field, const ProbeFamily& family);
Eigen::MatrixXd probe_biharmonic_gram(const TorusField& field, const ProbeFamily& family);

struct ProbeResult {
  ProbeFamily family;
  double gram_min_eig = 0.0;
};

/// Constructive positivity certificate: finds the first K (doubling search,
/// cap 2^14) whose k x k S-form Gram is positive definite. Errors when the
/// field is nonpositive everywhere on the grid.
ProbeResult positivity_probe(const TorusField& field, int k);

}  // namespace omega
