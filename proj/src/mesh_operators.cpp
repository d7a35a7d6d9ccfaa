#include "omega/mesh_operators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "omega/sparse_eigs.hpp"

namespace omega {

namespace {

constexpr double kPi = std::numbers::pi;

struct FaceGeometry {
  std::array<double, 3> angle;  // at corners 0, 1, 2
  std::array<double, 3> cot;
  double area;
  bool obtuse;
};

FaceGeometry face_geometry(const TriangleMesh& mesh, int f) {
  const auto& t = mesh.faces[static_cast<std::size_t>(f)];
  std::array<Eigen::Vector3d, 3> p;
  for (int c = 0; c < 3; ++c) p[static_cast<std::size_t>(c)] = mesh.vertices[static_cast<std::size_t>(t[static_cast<std::size_t>(c)])];
  FaceGeometry g{};
  for (int c = 0; c < 3; ++c) {
    const Eigen::Vector3d u = p[static_cast<std::size_t>((c + 1) % 3)] - p[static_cast<std::size_t>(c)];
    const Eigen::Vector3d v = p[static_cast<std::size_t>((c + 2) % 3)] - p[static_cast<std::size_t>(c)];
    const double cross = u.cross(v).norm();
    const double dot = u.dot(v);
    g.angle[static_cast<std::size_t>(c)] = std::atan2(cross, dot);
    g.cot[static_cast<std::size_t>(c)] = dot / cross;
  }
  g.area = mesh.face_area(f);
  g.obtuse = g.angle[0] > kPi / 2 || g.angle[1] > kPi / 2 || g.angle[2] > kPi / 2;
  return g;
}

Eigen::SparseMatrix<double> assemble_stiffness(const TriangleMesh& mesh,
                                               const std::vector<double>& face_weight) {
  const int v = mesh.vertex_count();
  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(static_cast<std::size_t>(mesh.face_count()) * 12);
  for (int f = 0; f < mesh.face_count(); ++f) {
    const auto& t = mesh.faces[static_cast<std::size_t>(f)];
    const FaceGeometry g = face_geometry(mesh, f);
    const double w = face_weight.empty() ? 1.0 : face_weight[static_cast<std::size_t>(f)];
    for (int c = 0; c < 3; ++c) {
      const int a = t[static_cast<std::size_t>((c + 1) % 3)];
      const int b = t[static_cast<std::size_t>((c + 2) % 3)];
      const double half_cot = 0.5 * g.cot[static_cast<std::size_t>(c)] * w;
      trips.emplace_back(a, b, -half_cot);
      trips.emplace_back(b, a, -half_cot);
      trips.emplace_back(a, a, half_cot);
      trips.emplace_back(b, b, half_cot);
    }
  }
  Eigen::SparseMatrix<double> l(v, v);
  l.setFromTriplets(trips.begin(), trips.end());
  l.makeCompressed();
  return l;
}

}  // namespace

Eigen::SparseMatrix<double> weighted_stiffness(const TriangleMesh& mesh, const Eigen::VectorXd& vertex_field) {
  if (vertex_field.size() != mesh.vertex_count())
    throw input_error("weighted_stiffness: field size does not match vertex count");
  std::vector<double> face_weight(static_cast<std::size_t>(mesh.face_count()));
  for (int f = 0; f < mesh.face_count(); ++f) {
    const auto& t = mesh.faces[static_cast<std::size_t>(f)];
    face_weight[static_cast<std::size_t>(f)] =
        (vertex_field[t[0]] + vertex_field[t[1]] + vertex_field[t[2]]) / 3.0;
  }
  return assemble_stiffness(mesh, face_weight);
}

MeshOperators build_operators(const TriangleMesh& mesh) {
  const int v = mesh.vertex_count();
  MeshOperators ops;
  ops.stiffness = assemble_stiffness(mesh, {});

  ops.mass = Eigen::VectorXd::Zero(v);
  Eigen::VectorXd angle_sum = Eigen::VectorXd::Zero(v);
  for (int f = 0; f < mesh.face_count(); ++f) {
    const auto& t = mesh.faces[static_cast<std::size_t>(f)];
    const FaceGeometry g = face_geometry(mesh, f);
    for (int c = 0; c < 3; ++c) angle_sum[t[static_cast<std::size_t>(c)]] += g.angle[static_cast<std::size_t>(c)];
    if (!g.obtuse) {
      // Circumcentric (Voronoi) split: area at corner c is
      // (|e_cb|^2 cot(angle_b) + |e_ca|^2 cot(angle_a)) / 8.
      for (int c = 0; c < 3; ++c) {
        const int ia = (c + 1) % 3, ib = (c + 2) % 3;
        const Eigen::Vector3d pc = mesh.vertices[static_cast<std::size_t>(t[static_cast<std::size_t>(c)])];
        const Eigen::Vector3d pa = mesh.vertices[static_cast<std::size_t>(t[static_cast<std::size_t>(ia)])];
        const Eigen::Vector3d pb = mesh.vertices[static_cast<std::size_t>(t[static_cast<std::size_t>(ib)])];
        const double part = ((pc - pb).squaredNorm() * g.cot[static_cast<std::size_t>(ia)] +
                             (pc - pa).squaredNorm() * g.cot[static_cast<std::size_t>(ib)]) /
                            8.0;
        ops.mass[t[static_cast<std::size_t>(c)]] += part;
      }
    } else {
      for (int c = 0; c < 3; ++c) ops.mass[t[static_cast<std::size_t>(c)]] += g.area / 3.0;
      ops.barycentric_fallback_faces.push_back(f);
    }
  }

  ops.curvature.resize(v);
  double defect_total = 0.0;
  for (int i = 0; i < v; ++i) {
    const double defect = 2.0 * kPi - angle_sum[i];
    defect_total += defect;
    ops.curvature[i] = defect / ops.mass[i];
  }
  ops.gauss_bonnet_residual = std::abs(defect_total - 2.0 * kPi * mesh.euler_characteristic());
  ops.weighted_stiffness = weighted_stiffness(mesh, ops.curvature);
  return ops;
}

EigenDecomposition eigensolve(const MeshOperators& ops, int count, const std::string& provenance) {
  const Eigen::Index v = ops.stiffness.rows();
  if (count < 1 || count >= v - 1) throw input_error("eigensolve: count must satisfy 1 <= count < V - 1");

  // Standard form via the diagonal mass: C = M^{-1/2} L M^{-1/2}.
  const Eigen::VectorXd inv_sqrt_m = ops.mass.cwiseSqrt().cwiseInverse();
  Eigen::SparseMatrix<double> c = ops.stiffness;
  for (Eigen::Index outer = 0; outer < c.outerSize(); ++outer)
    for (Eigen::SparseMatrix<double>::InnerIterator it(c, outer); it; ++it)
      it.valueRef() *= inv_sqrt_m[it.row()] * inv_sqrt_m[it.col()];

  Eigen::VectorXd values(count + 1);
  Eigen::MatrixXd y(v, count + 1);
  if (v <= 600) {
    const Eigen::MatrixXd c_dense(c);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> dense(c_dense);
    values = dense.eigenvalues().head(count + 1);
    y = dense.eigenvectors().leftCols(count + 1);
  } else {
    const SmallestEigs eigs = smallest_eigenpairs(c, count + 1);
    values = eigs.values;
    y = eigs.vectors;
  }

  if (std::abs(values[0]) > 1e-8 * std::max(values[1], 1e-30))
    throw solver_error("eigensolve: zero mode not resolved; lowest eigenvalue " + std::to_string(values[0]));

  EigenDecomposition out;
  out.basis.manifold_dim = 2;
  out.basis.provenance = provenance;
  out.basis.eigenvalues = values.tail(count);
  out.vectors.resize(v, count);
  for (int j = 0; j < count; ++j) {
    Eigen::VectorXd x = inv_sqrt_m.cwiseProduct(y.col(j + 1));
    // Deterministic sign: largest-magnitude entry positive.
    Eigen::Index pivot;
    x.cwiseAbs().maxCoeff(&pivot);
    if (x[pivot] < 0.0) x = -x;
    const Eigen::VectorXd lx = ops.stiffness * x;
    const double lambda = out.basis.eigenvalues[j];
    const double residual = (lx - lambda * ops.mass.cwiseProduct(x).eval()).norm();
    if (residual > 1e-8 * lx.norm())
      throw solver_error("eigensolve: residual contract violated at pair " + std::to_string(j) +
                         ", achieved " + std::to_string(residual / lx.norm()) + " relative");
    out.vectors.col(j) = x;
  }
  out.basis.validate();
  return out;
}

FormPair assemble_ricci_forms(const MeshOperators& ops, const EigenDecomposition& eig, int use_first) {
  if (use_first < 2 || use_first > eig.basis.eigenvalues.size())
    throw input_error("assemble_ricci_forms: basis prefix out of range");
  const Eigen::MatrixXd x = eig.vectors.leftCols(use_first);
  FormPair forms;
  Eigen::MatrixXd a = x.transpose() * (ops.weighted_stiffness * x);
  forms.A = 0.5 * (a + a.transpose());
  const Eigen::VectorXd lambda = eig.basis.eigenvalues.head(use_first);
  forms.B = lambda.cwiseProduct(lambda).asDiagonal();
  forms.basis = eig.basis;
  forms.basis.eigenvalues = lambda;
  return forms;
}

MeshOmegaResult omega_spectrum(const TriangleMesh& mesh, int basis_size, int top) {
  if (basis_size < 4) throw input_error("omega_spectrum: basis_size must be at least 4");
  if (top < 1) throw input_error("omega_spectrum: top must be positive");
  const MeshOperators ops = build_operators(mesh);
  const EigenDecomposition eig = eigensolve(ops, basis_size);

  const LambdaSpectrum full = solve_lambda(assemble_ricci_forms(ops, eig, basis_size));
  const LambdaSpectrum half = solve_lambda(assemble_ricci_forms(ops, eig, basis_size / 2));

  MeshOmegaResult result;
  result.spectrum = full;
  result.omega1 = full.positive.empty() ? 0.0 : full.positive[0];
  result.omega1_half_basis = half.positive.empty() ? 0.0 : half.positive[0];
  result.converged = std::abs(result.omega1 - result.omega1_half_basis) <= 1e-3;
  result.theorem_a_margin = 0.5 - result.omega1;
  result.gauss_bonnet_residual = ops.gauss_bonnet_residual;
  result.fallback_face_count = static_cast<int>(ops.barycentric_fallback_faces.size());
  result.lambda1 = eig.basis.eigenvalues[0];
  result.min_vertex_curvature = ops.curvature.minCoeff();
  result.vertex_count = mesh.vertex_count();
  result.face_count = mesh.face_count();
  result.euler = mesh.euler_characteristic();
  (void)top;
  return result;
}

std::vector<BlobPoint> blob_experiment(const std::vector<double>& eps_values, int subdivisions, int basis_size) {
  if (eps_values.empty()) throw input_error("blob_experiment: need at least one eps");
  for (std::size_t i = 1; i < eps_values.size(); ++i)
    if (!(eps_values[i] < eps_values[i - 1])) throw input_error("blob_experiment: eps values must decrease");

  // Resolution gate: at least 4 triangles across the smallest bump. The base
  // icosahedron edge subtends ~1.107 rad, halved per subdivision.
  const double edge_angle = std::acos(1.0 / std::sqrt(5.0)) / std::pow(2.0, subdivisions);
  const double smallest = eps_values.back();
  if (smallest > 0.0 && 2.0 * smallest / edge_angle < 4.0)
    throw input_error("blob_experiment: resolution check failed; smallest eps " + std::to_string(smallest) +
                      " spans fewer than 4 triangles at subdivision " + std::to_string(subdivisions));

  std::vector<BlobPoint> table;
  for (double eps : eps_values) {
    const TriangleMesh mesh = make_blob_sphere(subdivisions, eps);
    const MeshOmegaResult r = omega_spectrum(mesh, basis_size, 1);
    table.push_back({eps, r.omega1});
  }
  return table;
}

}  // namespace omega
