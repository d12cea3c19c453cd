// Serial reference kernels against their OpenMP twins. Prints wall time per
// call and the largest deviation between the two results.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>

#include "dnb/conformal.hpp"
#include "dnb/density.hpp"
#include "dnb/fem.hpp"
#include "dnb/kernels.hpp"

namespace {

double seconds(const std::function<void()>& f, int reps) {
  const auto t0 = std::chrono::steady_clock::now();
  for (int i = 0; i < reps; ++i) f();
  const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
  return dt.count() / reps;
}

void report(const char* name, double serial, double parallel, double diff) {
  std::printf("%-24s serial %10.3f ms  parallel %10.3f ms  speedup %5.2fx  max|diff| %.3g\n",
              name, serial * 1e3, parallel * 1e3, serial / parallel, diff);
}

}  // namespace

int main() {
  using namespace dnb;
  std::printf("threads: %d\n", kernels::num_threads());

  const std::size_t n = std::size_t{1} << 22;
  const auto term = [](std::size_t i) { return std::sin(1e-3 * static_cast<double>(i)); };
  double a = 0, b = 0;
  const double ts = seconds([&] { a = kernels::sum_serial(n, term); }, 5);
  const double tp = seconds([&] { b = kernels::sum(n, term); }, 5);
  report("sum (4M terms)", ts, tp, std::abs(a - b));

  std::vector<double> va, vb;
  const auto f = [](std::size_t i) { return std::exp(-1e-6 * static_cast<double>(i)); };
  const double ms = seconds([&] { va = kernels::map_serial<double>(n, f); }, 5);
  const double mp = seconds([&] { vb = kernels::map<double>(n, f); }, 5);
  double dmax = 0;
  for (std::size_t i = 0; i < n; ++i) dmax = std::max(dmax, std::abs(va[i] - vb[i]));
  report("map (4M values)", ms, mp, dmax);

  const ConformalMap phi = ConformalMap::perturbed_power({0.5, 0.0}, 2);
  const DensityField rho = DensityField::gaussian(4.0);
  const TriMesh mesh = mesh_from_map(phi, 7);
  FemSystem s1, s2;
  const double as = seconds([&] { s1 = assemble_serial(mesh, phi, rho); }, 3);
  const double ap = seconds([&] { s2 = assemble(mesh, phi, rho); }, 3);
  const double dk = (s1.stiffness - s2.stiffness).norm() + (s1.mass - s2.mass).norm();
  char label[64];
  std::snprintf(label, sizeof label, "assemble (%zu tris)", mesh.triangles.size());
  report(label, as, ap, dk);
  return 0;
}
