#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <vector>

#include "omega/forms.hpp"
#include "omega/mesh.hpp"

namespace omega {

/// Discrete operators of a closed surface mesh: cotangent stiffness L,
/// lumped mixed-Voronoi mass M (diagonal), per-vertex Gaussian curvature K
/// (angle defect over vertex area), and the curvature-weighted stiffness L_K
/// with per-face weight equal to the mean of the three vertex curvatures.
struct MeshOperators {
  Eigen::SparseMatrix<double> stiffness;
  Eigen::VectorXd mass;
  Eigen::VectorXd curvature;
  Eigen::SparseMatrix<double> weighted_stiffness;
  std::vector<int> barycentric_fallback_faces;  // obtuse faces lumped barycentrically
  double gauss_bonnet_residual = 0.0;           // |sum of defects - 2 pi chi|
};

MeshOperators build_operators(const TriangleMesh& mesh);

/// Stiffness weighted by an arbitrary per-vertex scalar field (face weight =
/// mean of the three vertex values). With the constant field 1 this is
/// exactly the plain stiffness.
Eigen::SparseMatrix<double> weighted_stiffness(const TriangleMesh& mesh, const Eigen::VectorXd& vertex_field);

/// Discrete Laplacian eigenpairs L x = lambda M x, constants removed,
/// eigenvectors M-orthonormal, ascending.
struct EigenDecomposition {
  SpectralBasis basis;
  Eigen::MatrixXd vectors;  // V x N, M-orthonormal columns
};

EigenDecomposition eigensolve(const MeshOperators& ops, int count, const std::string& provenance = "mesh");

/// Galerkin forms for S = Ric on the first `use_first` eigenpairs:
/// A_ij = x_i^T L_K x_j and B = diag(lambda_j^2).
FormPair assemble_ricci_forms(const MeshOperators& ops, const EigenDecomposition& eig, int use_first);

struct MeshOmegaResult {
  LambdaSpectrum spectrum;
  double omega1 = 0.0;
  double omega1_half_basis = 0.0;  // same pipeline on the first N/2 eigenpairs
  bool converged = false;          // |omega1 - omega1_half_basis| <= 1e-3
  double theorem_a_margin = 0.0;   // (n-1)/n - omega1 with n = 2
  double gauss_bonnet_residual = 0.0;
  int fallback_face_count = 0;
  double lambda1 = 0.0;
  double min_vertex_curvature = 0.0;
  int vertex_count = 0;
  int face_count = 0;
  int euler = 0;
};

/// Full pipeline: operators, eigensolve, Ricci forms, solve_lambda.
MeshOmegaResult omega_spectrum(const TriangleMesh& mesh, int basis_size, int top);

struct BlobPoint {
  double eps;
  double omega1;
};

/// Sphere-with-shrinking-bump experiment: requires eps values decreasing and
/// at least 4 triangles across the smallest bump; returns (eps, omega1) rows.
std::vector<BlobPoint> blob_experiment(const std::vector<double>& eps_values, int subdivisions, int basis_size);

}  // namespace omega
