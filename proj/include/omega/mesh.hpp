#pragma once

#include <Eigen/Dense>
#include <array>
#include <string>
#include <vector>

#include "omega/errors.hpp"

namespace omega {

/// Closed, oriented, connected triangle surface embedded in R^3.
/// Faces are counterclockwise; validation enforces the closed-2-manifold
/// invariants and repairs orientation when a globally consistent repair exists.
struct TriangleMesh {
  std::vector<Eigen::Vector3d> vertices;
  std::vector<std::array<int, 3>> faces;

  int vertex_count() const { return static_cast<int>(vertices.size()); }
  int face_count() const { return static_cast<int>(faces.size()); }
  int edge_count() const;       // undirected
  int euler_characteristic() const;
  double face_area(int f) const;
};

enum class MeshFormat { OFF, OBJ };

/// Parse, validate, and orientation-repair a mesh file. Format inferred from
/// the extension unless given. Errors name the offending simplex.
TriangleMesh load_mesh(const std::string& path);
TriangleMesh load_mesh(const std::string& path, MeshFormat format);

/// Validation used by load_mesh and the generators: closed 2-manifold edges,
/// consistent (repairable) orientation, connectivity, nondegenerate faces.
void validate_mesh(TriangleMesh& mesh, double degenerate_tol = 1e-9);

void write_off(const TriangleMesh& mesh, const std::string& path);
void write_obj(const TriangleMesh& mesh, const std::string& path);

/// Subdivided icosahedron projected to the sphere of the given radius.
/// Vertices: 10 * 4^subdivisions + 2.
TriangleMesh make_icosphere(int subdivisions, double radius = 1.0);

/// Icosphere scaled anisotropically to the given semi-axes.
TriangleMesh make_ellipsoid(int subdivisions, const Eigen::Vector3d& radii);

/// Unit icosphere with a rotationally symmetric bump at the north pole whose
/// angular width and height both scale with eps (eps = 0 gives the plain
/// sphere). `slope` fixes the bump height eps * slope.
TriangleMesh make_blob_sphere(int subdivisions, double eps, double slope = 1.0);

/// Torus of revolution, major radius R, tube radius r.
TriangleMesh make_torus(int major_segments, int minor_segments, double major_radius, double tube_radius);

/// Plain icosahedron of circumradius `radius` (12 vertices, 20 faces).
TriangleMesh make_icosahedron(double radius = 1.0);

/// Regular octahedron with vertices on the coordinate axes.
TriangleMesh make_octahedron(double radius = 1.0);

}  // namespace omega
