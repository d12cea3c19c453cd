#include <cmath>
#include <numbers>
#include <ostream>
#include <set>
#include <utility>

#include "dnb/error.hpp"
#include "dnb/fem.hpp"
#include "dnb/kernels.hpp"

namespace dnb {

namespace {

double signed_area(Complex a, Complex b, Complex c) {
  const Complex u = b - a;
  const Complex v = c - a;
  return 0.5 * (u.real() * v.imag() - u.imag() * v.real());
}

}  // namespace

std::size_t TriMesh::edge_count() const {
  std::set<std::pair<int, int>> edges;
  for (const auto& t : triangles) {
    for (int k = 0; k < 3; ++k) {
      const int a = t[static_cast<std::size_t>(k)];
      const int b = t[static_cast<std::size_t>((k + 1) % 3)];
      edges.emplace(std::min(a, b), std::max(a, b));
    }
  }
  return edges.size();
}

int TriMesh::euler_characteristic() const {
  return static_cast<int>(vertices.size()) - static_cast<int>(edge_count()) +
         static_cast<int>(triangles.size());
}

double TriMesh::area() const {
  return kernels::sum(triangles.size(), [&](std::size_t e) {
    const auto& t = triangles[e];
    return signed_area(vertices[static_cast<std::size_t>(t[0])],
                       vertices[static_cast<std::size_t>(t[1])],
                       vertices[static_cast<std::size_t>(t[2])]);
  });
}

TriMesh mesh_from_map(const ConformalMap& map, int level) {
  if (level < 1 || level > 8) throw MeshError("mesh level must be in [1, 8]");
  const int n_rings = 1 << level;
  TriMesh mesh;
  mesh.map_name = map.name();
  mesh.level = level;

  // ring_start[k]: index of the first vertex of ring k (ring 0 is the centre)
  std::vector<int> ring_start(static_cast<std::size_t>(n_rings) + 2);
  mesh.disk.emplace_back(0.0, 0.0);
  mesh.boundary.push_back(false);
  ring_start[0] = 0;
  ring_start[1] = 1;
  for (int k = 1; k <= n_rings; ++k) {
    const int count = 6 * k;
    const double r = static_cast<double>(k) / n_rings;
    for (int j = 0; j < count; ++j) {
      mesh.disk.push_back(k == n_rings ? std::polar(1.0, 2.0 * std::numbers::pi * j / count)
                                       : std::polar(r, 2.0 * std::numbers::pi * j / count));
      mesh.boundary.push_back(k == n_rings);
    }
    ring_start[static_cast<std::size_t>(k) + 1] = ring_start[static_cast<std::size_t>(k)] + count;
  }

  auto add = [&](int a, int b, int c) {
    if (signed_area(mesh.disk[static_cast<std::size_t>(a)], mesh.disk[static_cast<std::size_t>(b)],
                    mesh.disk[static_cast<std::size_t>(c)]) < 0.0) {
      std::swap(b, c);
    }
    mesh.triangles.push_back({a, b, c});
  };
  for (int j = 0; j < 6; ++j) add(0, 1 + j, 1 + (j + 1) % 6);
  for (int k = 2; k <= n_rings; ++k) {
    const int m = 6 * (k - 1);
    const int n = 6 * k;
    const int in0 = ring_start[static_cast<std::size_t>(k) - 1];
    const int out0 = ring_start[static_cast<std::size_t>(k)];
    int i = 0;
    int j = 0;
    // Merge walk by angle; (j+1)/n ≤ (i+1)/m compared in integers.
    while (i < m || j < n) {
      const bool advance_outer = j < n && (i == m || (j + 1) * m <= (i + 1) * n);
      if (advance_outer) {
        add(in0 + i % m, out0 + j % n, out0 + (j + 1) % n);
        ++j;
      } else {
        add(in0 + i % m, out0 + j % n, in0 + (i + 1) % m);
        ++i;
      }
    }
  }

  mesh.vertices = kernels::map<Complex>(mesh.disk.size(),
                                        [&](std::size_t i) { return map(mesh.disk[i]); });
  for (const auto& t : mesh.triangles) {
    const double a = signed_area(mesh.vertices[static_cast<std::size_t>(t[0])],
                                 mesh.vertices[static_cast<std::size_t>(t[1])],
                                 mesh.vertices[static_cast<std::size_t>(t[2])]);
    if (!(a > 0.0)) throw MeshError("degenerate mapped triangle in mesh of " + map.name());
  }
  return mesh;
}

void write_mesh(std::ostream& os, const TriMesh& mesh) {
  os << "trimesh 1 " << mesh.vertices.size() << " " << mesh.triangles.size() << "\n";
  os.precision(17);
  for (std::size_t i = 0; i < mesh.vertices.size(); ++i) {
    os << mesh.vertices[i].real() << " " << mesh.vertices[i].imag() << " "
       << (mesh.boundary[i] ? 1 : 0) << "\n";
  }
  for (const auto& t : mesh.triangles) os << t[0] << " " << t[1] << " " << t[2] << "\n";
}

}  // namespace dnb
