#include "omega/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <map>
#include <numbers>
#include <queue>
#include <sstream>

namespace omega {

namespace {

constexpr double kPi = std::numbers::pi;

std::string simplex(const std::array<int, 3>& f) {
  return "(" + std::to_string(f[0]) + "," + std::to_string(f[1]) + "," + std::to_string(f[2]) + ")";
}

using EdgeKey = std::pair<int, int>;

EdgeKey undirected(int a, int b) { return {std::min(a, b), std::max(a, b)}; }

// Quintic smoothstep: C^2 ramp from 0 at t<=0 to 1 at t>=1.
double smoothstep5(double t) {
  t = std::clamp(t, 0.0, 1.0);
  return t * t * t * (t * (6.0 * t - 15.0) + 10.0);
}

}  // namespace

int TriangleMesh::edge_count() const {
  std::map<EdgeKey, int> edges;
  for (const auto& f : faces)
    for (int e = 0; e < 3; ++e) edges[undirected(f[e], f[(e + 1) % 3])]++;
  return static_cast<int>(edges.size());
}

int TriangleMesh::euler_characteristic() const {
  return vertex_count() - edge_count() + face_count();
}

double TriangleMesh::face_area(int f) const {
  const auto& t = faces[static_cast<std::size_t>(f)];
  const Eigen::Vector3d e1 = vertices[static_cast<std::size_t>(t[1])] - vertices[static_cast<std::size_t>(t[0])];
  const Eigen::Vector3d e2 = vertices[static_cast<std::size_t>(t[2])] - vertices[static_cast<std::size_t>(t[0])];
  return 0.5 * e1.cross(e2).norm();
}

void validate_mesh(TriangleMesh& mesh, double degenerate_tol) {
  const int v = mesh.vertex_count();
  const int fcount = mesh.face_count();
  if (v < 4 || fcount < 4) throw mesh_error("mesh too small to be a closed surface");

  for (int f = 0; f < fcount; ++f) {
    const auto& t = mesh.faces[static_cast<std::size_t>(f)];
    for (int idx : t)
      if (idx < 0 || idx >= v)
        throw mesh_error("face " + std::to_string(f) + " " + simplex(t) + " references a missing vertex");
    if (t[0] == t[1] || t[1] == t[2] || t[0] == t[2])
      throw mesh_error("face " + std::to_string(f) + " " + simplex(t) + " repeats a vertex");
  }

  // Closed 2-manifold: every undirected edge belongs to exactly two faces.
  std::map<EdgeKey, std::vector<int>> edge_faces;
  for (int f = 0; f < fcount; ++f) {
    const auto& t = mesh.faces[static_cast<std::size_t>(f)];
    for (int e = 0; e < 3; ++e) edge_faces[undirected(t[e], t[(e + 1) % 3])].push_back(f);
  }
  for (const auto& [key, incident] : edge_faces) {
    if (incident.size() == 1)
      throw mesh_error("open surface: edge (" + std::to_string(key.first) + "," + std::to_string(key.second) +
                       ") belongs to a single face " + std::to_string(incident[0]));
    if (incident.size() > 2)
      throw mesh_error("non-manifold edge (" + std::to_string(key.first) + "," + std::to_string(key.second) +
                       ") shared by " + std::to_string(incident.size()) + " faces");
  }

  // Orientation repair by propagation: adjacent faces must traverse their
  // shared edge in opposite directions. A conflict on an already-fixed face
  // means no globally consistent orientation exists.
  auto traverses_forward = [&mesh](int f, int a, int b) {
    const auto& t = mesh.faces[static_cast<std::size_t>(f)];
    for (int e = 0; e < 3; ++e)
      if (t[e] == a && t[(e + 1) % 3] == b) return true;
    return false;
  };
  std::vector<int> state(static_cast<std::size_t>(fcount), -1);  // -1 unseen, 0 keep, 1 flip
  std::vector<char> queued(static_cast<std::size_t>(fcount), 0);
  int components = 0;
  for (int seed = 0; seed < fcount; ++seed) {
    if (state[static_cast<std::size_t>(seed)] != -1) continue;
    ++components;
    state[static_cast<std::size_t>(seed)] = 0;
    std::queue<int> frontier;
    frontier.push(seed);
    while (!frontier.empty()) {
      const int f = frontier.front();
      frontier.pop();
      const auto t = mesh.faces[static_cast<std::size_t>(f)];
      const bool flipped = state[static_cast<std::size_t>(f)] == 1;
      for (int e = 0; e < 3; ++e) {
        int a = t[e], b = t[(e + 1) % 3];
        if (flipped) std::swap(a, b);  // effective traversal after the pending flip
        for (int g : edge_faces[undirected(a, b)]) {
          if (g == f) continue;
          // Neighbor must traverse b -> a once its own flip state is applied.
          const int needed = traverses_forward(g, b, a) ? 0 : 1;
          if (state[static_cast<std::size_t>(g)] == -1) {
            state[static_cast<std::size_t>(g)] = needed;
            frontier.push(g);
          } else if (state[static_cast<std::size_t>(g)] != needed) {
            throw mesh_error("orientation conflict at faces " + std::to_string(f) + " and " + std::to_string(g) +
                             ": no globally consistent orientation exists");
          }
        }
      }
    }
  }
  if (components > 1) throw mesh_error("mesh has " + std::to_string(components) + " connected components");
  for (int f = 0; f < fcount; ++f)
    if (state[static_cast<std::size_t>(f)] == 1)
      std::swap(mesh.faces[static_cast<std::size_t>(f)][1], mesh.faces[static_cast<std::size_t>(f)][2]);

  double mean_area = 0.0;
  for (int f = 0; f < fcount; ++f) mean_area += mesh.face_area(f);
  mean_area /= fcount;
  for (int f = 0; f < fcount; ++f)
    if (!(mesh.face_area(f) > degenerate_tol * mean_area))
      throw mesh_error("degenerate face " + std::to_string(f) + " " +
                       simplex(mesh.faces[static_cast<std::size_t>(f)]) + ": area " +
                       std::to_string(mesh.face_area(f)));
}

namespace {

TriangleMesh parse_off(std::istream& in) {
  std::string token;
  if (!(in >> token) || token != "OFF") throw mesh_error("OFF: missing header");
  long long nv = 0, nf = 0, ne = 0;
  if (!(in >> nv >> nf >> ne)) throw mesh_error("OFF: malformed counts");
  TriangleMesh mesh;
  mesh.vertices.resize(static_cast<std::size_t>(nv));
  for (long long i = 0; i < nv; ++i) {
    double x, y, z;
    if (!(in >> x >> y >> z)) throw mesh_error("OFF: malformed vertex " + std::to_string(i));
    mesh.vertices[static_cast<std::size_t>(i)] = {x, y, z};
  }
  for (long long f = 0; f < nf; ++f) {
    int arity;
    if (!(in >> arity)) throw mesh_error("OFF: malformed face " + std::to_string(f));
    if (arity != 3) throw mesh_error("OFF: face " + std::to_string(f) + " is not a triangle");
    std::array<int, 3> tri{};
    if (!(in >> tri[0] >> tri[1] >> tri[2])) throw mesh_error("OFF: malformed face " + std::to_string(f));
    mesh.faces.push_back(tri);
  }
  return mesh;
}

TriangleMesh parse_obj(std::istream& in) {
  TriangleMesh mesh;
  std::string line;
  long long face_no = 0;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag)) continue;
    if (tag == "v") {
      double x, y, z;
      if (!(ls >> x >> y >> z)) throw mesh_error("OBJ: malformed vertex line: " + line);
      mesh.vertices.push_back({x, y, z});
    } else if (tag == "f") {
      std::vector<int> idx;
      std::string field;
      while (ls >> field) {
        // Geometry only: texture and normal references after '/' are ignored.
        const std::size_t slash = field.find('/');
        if (slash != std::string::npos) field = field.substr(0, slash);
        const long long raw = std::stoll(field);
        const long long resolved = raw > 0 ? raw - 1 : static_cast<long long>(mesh.vertices.size()) + raw;
        idx.push_back(static_cast<int>(resolved));
      }
      if (idx.size() != 3) throw mesh_error("OBJ: face " + std::to_string(face_no) + " is not a triangle");
      mesh.faces.push_back({idx[0], idx[1], idx[2]});
      ++face_no;
    }
  }
  return mesh;
}

}  // namespace

TriangleMesh load_mesh(const std::string& path, MeshFormat format) {
  std::ifstream in(path);
  if (!in) throw mesh_error("cannot open mesh file: " + path);
  TriangleMesh mesh = format == MeshFormat::OFF ? parse_off(in) : parse_obj(in);
  validate_mesh(mesh);
  return mesh;
}

TriangleMesh load_mesh(const std::string& path) {
  const std::size_t dot = path.find_last_of('.');
  std::string ext = dot == std::string::npos ? "" : path.substr(dot + 1);
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
  if (ext == "off") return load_mesh(path, MeshFormat::OFF);
  if (ext == "obj") return load_mesh(path, MeshFormat::OBJ);
  throw mesh_error("unknown mesh extension: " + path);
}

void write_off(const TriangleMesh& mesh, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw mesh_error("cannot write mesh file: " + path);
  out.precision(17);
  out << "OFF\n" << mesh.vertex_count() << " " << mesh.face_count() << " 0\n";
  for (const auto& v : mesh.vertices) out << v.x() << " " << v.y() << " " << v.z() << "\n";
  for (const auto& f : mesh.faces) out << "3 " << f[0] << " " << f[1] << " " << f[2] << "\n";
}

void write_obj(const TriangleMesh& mesh, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw mesh_error("cannot write mesh file: " + path);
  out.precision(17);
  for (const auto& v : mesh.vertices) out << "v " << v.x() << " " << v.y() << " " << v.z() << "\n";
  for (const auto& f : mesh.faces) out << "f " << f[0] + 1 << " " << f[1] + 1 << " " << f[2] + 1 << "\n";
}

TriangleMesh make_icosahedron(double radius) {
  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  const double s = radius / std::sqrt(1.0 + phi * phi);
  const double a = s, b = s * phi;
  TriangleMesh mesh;
  mesh.vertices = {
      {-a, b, 0}, {a, b, 0}, {-a, -b, 0}, {a, -b, 0}, {0, -a, b},  {0, a, b},
      {0, -a, -b}, {0, a, -b}, {b, 0, -a}, {b, 0, a},  {-b, 0, -a}, {-b, 0, a},
  };
  mesh.faces = {
      {0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11}, {1, 5, 9},  {5, 11, 4},
      {11, 10, 2}, {10, 7, 6}, {7, 1, 8},  {3, 9, 4},  {3, 4, 2},   {3, 2, 6},  {3, 6, 8},
      {3, 8, 9},  {4, 9, 5},  {2, 4, 11}, {6, 2, 10},  {8, 6, 7},  {9, 8, 1},
  };
  return mesh;
}

TriangleMesh make_octahedron(double radius) {
  TriangleMesh mesh;
  const double r = radius;
  mesh.vertices = {{r, 0, 0}, {-r, 0, 0}, {0, r, 0}, {0, -r, 0}, {0, 0, r}, {0, 0, -r}};
  mesh.faces = {{0, 2, 4}, {2, 1, 4}, {1, 3, 4}, {3, 0, 4}, {2, 0, 5}, {1, 2, 5}, {3, 1, 5}, {0, 3, 5}};
  return mesh;
}

namespace {

TriangleMesh subdivide_projected(TriangleMesh mesh, int subdivisions, double radius) {
  for (auto& v : mesh.vertices) v = radius * v.normalized();
  for (int pass = 0; pass < subdivisions; ++pass) {
    std::map<EdgeKey, int> midpoint;
    TriangleMesh next;
    next.vertices = mesh.vertices;
    auto midpoint_of = [&](int a, int b) {
      const EdgeKey key = undirected(a, b);
      auto it = midpoint.find(key);
      if (it != midpoint.end()) return it->second;
      const Eigen::Vector3d m =
          0.5 * (next.vertices[static_cast<std::size_t>(a)] + next.vertices[static_cast<std::size_t>(b)]);
      next.vertices.push_back(radius * m.normalized());
      const int idx = static_cast<int>(next.vertices.size()) - 1;
      midpoint.emplace(key, idx);
      return idx;
    };
    for (const auto& f : mesh.faces) {
      const int ab = midpoint_of(f[0], f[1]);
      const int bc = midpoint_of(f[1], f[2]);
      const int ca = midpoint_of(f[2], f[0]);
      next.faces.push_back({f[0], ab, ca});
      next.faces.push_back({f[1], bc, ab});
      next.faces.push_back({f[2], ca, bc});
      next.faces.push_back({ab, bc, ca});
    }
    mesh = std::move(next);
  }
  return mesh;
}

}  // namespace

TriangleMesh make_icosphere(int subdivisions, double radius) {
  if (subdivisions < 0 || subdivisions > 8) throw input_error("make_icosphere: subdivisions out of range");
  if (!(radius > 0.0)) throw input_error("make_icosphere: radius must be positive");
  TriangleMesh mesh = subdivide_projected(make_icosahedron(1.0), subdivisions, radius);
  validate_mesh(mesh);
  return mesh;
}

TriangleMesh make_ellipsoid(int subdivisions, const Eigen::Vector3d& radii) {
  if (!(radii.minCoeff() > 0.0)) throw input_error("make_ellipsoid: radii must be positive");
  TriangleMesh mesh = make_icosphere(subdivisions, 1.0);
  for (auto& v : mesh.vertices) v = v.cwiseProduct(radii);
  validate_mesh(mesh);
  return mesh;
}

TriangleMesh make_blob_sphere(int subdivisions, double eps, double slope) {
  if (eps < 0.0 || eps > kPi / 2) throw input_error("make_blob_sphere: eps must lie in [0, pi/2]");
  TriangleMesh mesh = make_icosphere(subdivisions, 1.0);
  if (eps == 0.0) return mesh;
  for (auto& v : mesh.vertices) {
    const double theta = std::acos(std::clamp(v.normalized().z(), -1.0, 1.0));  // polar angle from +z
    const double t = theta / eps;
    if (t < 1.0) v *= 1.0 + slope * eps * (1.0 - smoothstep5(t));
  }
  validate_mesh(mesh);
  return mesh;
}

TriangleMesh make_torus(int major_segments, int minor_segments, double major_radius, double tube_radius) {
  if (major_segments < 3 || minor_segments < 3) throw input_error("make_torus: need at least 3 segments");
  if (!(major_radius > tube_radius) || !(tube_radius > 0.0))
    throw input_error("make_torus: require 0 < tube_radius < major_radius");
  TriangleMesh mesh;
  for (int i = 0; i < major_segments; ++i) {
    const double u = 2.0 * kPi * i / major_segments;
    for (int j = 0; j < minor_segments; ++j) {
      const double v = 2.0 * kPi * j / minor_segments;
      const double ring = major_radius + tube_radius * std::cos(v);
      mesh.vertices.push_back({ring * std::cos(u), ring * std::sin(u), tube_radius * std::sin(v)});
    }
  }
  auto at = [&](int i, int j) { return (i % major_segments) * minor_segments + (j % minor_segments); };
  for (int i = 0; i < major_segments; ++i) {
    for (int j = 0; j < minor_segments; ++j) {
      const int a = at(i, j), b = at(i + 1, j), c = at(i + 1, j + 1), d = at(i, j + 1);
      mesh.faces.push_back({a, b, c});
      mesh.faces.push_back({a, c, d});
    }
  }
  validate_mesh(mesh);
  return mesh;
}

}  // namespace omega
