#include <array>
#include <cmath>
#include <numbers>
#include <random>

#include <Eigen/Dense>
#include <Eigen/SparseCholesky>

#include "dnb/error.hpp"
#include "dnb/fem.hpp"
#include "dnb/kernels.hpp"
#include "dnb/orlicz.hpp"

namespace dnb {

namespace {

struct ElementMatrices {
  std::array<double, 9> k{};
  std::array<double, 9> m{};
};

ElementMatrices element(const TriMesh& mesh, const ConformalMap& map, const DensityField& rho,
                        std::size_t e) {
  const auto& t = mesh.triangles[e];
  const Complex p0 = mesh.vertices[static_cast<std::size_t>(t[0])];
  const Complex p1 = mesh.vertices[static_cast<std::size_t>(t[1])];
  const Complex p2 = mesh.vertices[static_cast<std::size_t>(t[2])];
  const std::array<double, 3> b{p1.imag() - p2.imag(), p2.imag() - p0.imag(),
                                p0.imag() - p1.imag()};
  const std::array<double, 3> c{p2.real() - p1.real(), p0.real() - p2.real(),
                                p1.real() - p0.real()};
  const double area = 0.5 * (b[1] * c[2] - b[2] * c[1]);
  if (!(area > 0.0)) throw MeshError("assemble: non-positive triangle area");

  const Complex centroid = (mesh.disk[static_cast<std::size_t>(t[0])] +
                            mesh.disk[static_cast<std::size_t>(t[1])] +
                            mesh.disk[static_cast<std::size_t>(t[2])]) /
                           3.0;
  const double r = rho.at(map, centroid);
  if (!(r > 0.0) || !std::isfinite(r)) throw DensityError("assemble: density not positive");

  ElementMatrices out;
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      out.k[3 * i + j] = (b[i] * b[j] + c[i] * c[j]) / (4.0 * area);
      out.m[3 * i + j] = r * area / 12.0 * (i == j ? 2.0 : 1.0);
    }
  }
  return out;
}

FemSystem scatter(const TriMesh& mesh, const std::vector<ElementMatrices>& local) {
  std::vector<Eigen::Triplet<double>> kt;
  std::vector<Eigen::Triplet<double>> mt;
  kt.reserve(9 * local.size());
  mt.reserve(9 * local.size());
  for (std::size_t e = 0; e < local.size(); ++e) {
    const auto& t = mesh.triangles[e];
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t j = 0; j < 3; ++j) {
        kt.emplace_back(t[i], t[j], local[e].k[3 * i + j]);
        mt.emplace_back(t[i], t[j], local[e].m[3 * i + j]);
      }
    }
  }
  const auto n = static_cast<Eigen::Index>(mesh.vertices.size());
  FemSystem sys;
  sys.stiffness.resize(n, n);
  sys.mass.resize(n, n);
  sys.stiffness.setFromTriplets(kt.begin(), kt.end());
  sys.mass.setFromTriplets(mt.begin(), mt.end());
  return sys;
}

double residual_of(const SparseMatrix& a, const SparseMatrix& m, const Eigen::VectorXd& u,
                   double mu) {
  return (a * u - mu * (m * u)).norm() / u.norm();
}

EigenResult dense_solve(const SparseMatrix& a, const SparseMatrix& m) {
  const Eigen::MatrixXd ad(a);
  const Eigen::MatrixXd md(m);
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(ad, md);
  if (es.info() != Eigen::Success) throw SolverError("dense generalized eigensolve failed", NAN);
  // Index 0 is the constant mode (A·1 = 0).
  EigenResult out;
  out.mu = es.eigenvalues()(1);
  out.vector = es.eigenvectors().col(1);
  out.residual = residual_of(a, m, out.vector, out.mu);
  out.dense = true;
  return out;
}

EigenResult iterative_solve(const SparseMatrix& a, const SparseMatrix& m) {
  constexpr int kBlock = 4;
  constexpr double kShift = 0.1;
  constexpr int kMaxIter = 2000;
  const Eigen::Index n = a.rows();
  const SparseMatrix shifted = a + kShift * m;
  Eigen::SimplicialLDLT<SparseMatrix> ldlt(shifted);
  if (ldlt.info() != Eigen::Success) throw SolverError("factorization of A + sigma M failed", NAN);

  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(n);
  const Eigen::VectorXd m_ones = m * ones;
  const double c = ones.dot(m_ones);
  auto deflate = [&](Eigen::MatrixXd& v) {
    for (Eigen::Index j = 0; j < v.cols(); ++j) v.col(j) -= (m_ones.dot(v.col(j)) / c) * ones;
  };

  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Eigen::MatrixXd v(n, kBlock);
  for (Eigen::Index j = 0; j < kBlock; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) v(i, j) = dist(rng);
  }

  EigenResult out;
  double best_residual = INFINITY;
  for (int it = 0; it < kMaxIter; ++it) {
    deflate(v);
    Eigen::MatrixXd w = ldlt.solve(m * v);
    deflate(w);
    // M-orthonormalise, then Rayleigh–Ritz on span(W).
    const Eigen::MatrixXd gram = w.transpose() * (m * w);
    Eigen::LLT<Eigen::MatrixXd> llt(gram);
    if (llt.info() != Eigen::Success) throw SolverError("subspace collapsed", best_residual);
    const Eigen::MatrixXd l = llt.matrixL();
    w = w * l.transpose().triangularView<Eigen::Upper>().solve(
                Eigen::MatrixXd::Identity(kBlock, kBlock));
    const Eigen::MatrixXd ar = w.transpose() * (a * w);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (ar + ar.transpose()));
    v = w * es.eigenvectors();
    out.mu = es.eigenvalues()(0);
    out.vector = v.col(0);
    out.residual = residual_of(a, m, out.vector, out.mu);
    best_residual = std::min(best_residual, out.residual);
    if (out.residual <= 1e-12 * (1.0 + out.mu)) return out;
  }
  if (out.residual <= 1e-8) return out;
  throw SolverError("shift-invert iteration did not converge", out.residual);
}

}  // namespace

FemSystem assemble(const TriMesh& mesh, const ConformalMap& map, const DensityField& rho) {
  const auto local = kernels::map<ElementMatrices>(
      mesh.triangles.size(), [&](std::size_t e) { return element(mesh, map, rho, e); });
  return scatter(mesh, local);
}

FemSystem assemble_serial(const TriMesh& mesh, const ConformalMap& map, const DensityField& rho) {
  const auto local = kernels::map_serial<ElementMatrices>(
      mesh.triangles.size(), [&](std::size_t e) { return element(mesh, map, rho, e); });
  return scatter(mesh, local);
}

EigenResult first_nonzero_neumann(const SparseMatrix& a, const SparseMatrix& m) {
  if (a.rows() != a.cols() || m.rows() != a.rows() || m.cols() != a.cols()) {
    throw SolverError("first_nonzero_neumann: dimension mismatch", NAN);
  }
  if (a.rows() < 3) throw SolverError("first_nonzero_neumann: system too small", NAN);
  return a.rows() < 2000 ? dense_solve(a, m) : iterative_solve(a, m);
}

FemEstimate fem_eigenvalue(const ConformalMap& map, const DensityField& rho, int top_level,
                           int count) {
  if (count < 1 || top_level - count + 1 < 1) throw MeshError("fem_eigenvalue: bad level range");
  FemEstimate est;
  for (int level = top_level - count + 1; level <= top_level; ++level) {
    const TriMesh mesh = mesh_from_map(map, level);
    const FemSystem sys = assemble(mesh, map, rho);
    const EigenResult r = first_nonzero_neumann(sys.stiffness, sys.mass);
    est.levels.push_back(level);
    est.mu.push_back(r.mu);
    est.residuals.push_back(r.residual);
  }
  const std::size_t k = est.mu.size();
  est.extrapolated = k >= 2 ? (4.0 * est.mu[k - 1] - est.mu[k - 2]) / 3.0 : est.mu[k - 1];
  return est;
}

double b_m2_disk_estimate(int trial_family_size, const YoungFunction& m) {
  if (trial_family_size < 8) throw ParameterError("b_m2_disk_estimate: family size must be >= 8");
  // One rule for every family size, so that larger families only add members.
  static const DiskQuadrature quad = build_graded_disk_quadrature(12, 64, 40, 1e-14);
  const MeasurePtr disk = disk_measure(quad);
  const auto nodes = quad.nodes();
  const std::size_t n = nodes.size();

  const auto ratio = [&](std::vector<double> u, double grad_norm) {
    SampledFunction f(disk, u);
    const double med = weighted_median(f);
    for (double& x : u) x -= med;
    return luxemburg_norm(SampledFunction(disk, std::move(u)), m) / grad_norm;
  };

  const double sqrt_pi = std::sqrt(std::numbers::pi);
  double best = 0.0;
  for (int member = 0; member < trial_family_size; ++member) {
    std::vector<double> u(n);
    double grad;
    if (member < 2) {
      for (std::size_t i = 0; i < n; ++i) u[i] = member == 0 ? nodes[i].real() : nodes[i].imag();
      grad = sqrt_pi;
    } else {
      const double cap = (member - 1) * std::log(2.0);  // log 1/δ, δ = 2^{−(member−1)}
      for (std::size_t i = 0; i < n; ++i) u[i] = std::min(-std::log(std::abs(nodes[i])), cap);
      grad = std::sqrt(2.0 * std::numbers::pi * cap);
    }
    best = std::max(best, ratio(std::move(u), grad));
  }
  return best;
}

}  // namespace dnb
