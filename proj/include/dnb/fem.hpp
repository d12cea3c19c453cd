#pragma once

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Sparse>

#include "dnb/conformal.hpp"
#include "dnb/density.hpp"
#include "dnb/young.hpp"

namespace dnb {

// ---------------------------------------------------------------------------
// Disk reference

/// J₀ and J₁ by their power series; accurate to ~1e-16 for |x| ≤ 4.
double bessel_j0(double x);
double bessel_j1(double x);
/// J₁′(x) = J₀(x) − J₁(x)/x.
double bessel_j1_prime(double x);
/// First positive zero of J₁′, by bisection on [1.5, 2].
double bessel_j1_prime_first_zero();
/// μ(𝔻) = (j′₁,₁)².
double mu_disk_reference();

// ---------------------------------------------------------------------------
// Mesh

struct TriMesh {
  std::vector<Complex> disk;      ///< preimages in the closed disk
  std::vector<Complex> vertices;  ///< φ(disk)
  std::vector<std::array<int, 3>> triangles;
  std::vector<bool> boundary;
  std::string map_name;
  int level = 0;

  std::size_t edge_count() const;
  int euler_characteristic() const;
  double area() const;
};

/// Concentric-ring triangulation of the disk with N = 2^level rings
/// (6·4^level triangles), vertices mapped through φ. Level in [1, 8].
TriMesh mesh_from_map(const ConformalMap& map, int level);

/// Plain-text dump: "trimesh 1 V T" header, then vertices and triangles.
void write_mesh(std::ostream& os, const TriMesh& mesh);

// ---------------------------------------------------------------------------
// Assembly and eigen-solve

using SparseMatrix = Eigen::SparseMatrix<double>;

struct FemSystem {
  SparseMatrix stiffness;
  SparseMatrix mass;  ///< ρ-weighted, ρ sampled at φ(preimage centroid)
};

FemSystem assemble(const TriMesh& mesh, const ConformalMap& map, const DensityField& rho);
/// Single-threaded twin of assemble, kept as the reference implementation.
FemSystem assemble_serial(const TriMesh& mesh, const ConformalMap& map, const DensityField& rho);

struct EigenResult {
  double mu = 0.0;
  double residual = 0.0;  ///< ‖A u − μ M u‖₂ / ‖u‖₂
  Eigen::VectorXd vector;
  bool dense = false;
};

/// Smallest eigenvalue of A u = μ M u on the ρ-mean-zero subspace. Dense
/// solve below 2000 unknowns, block shift-invert subspace iteration above.
EigenResult first_nonzero_neumann(const SparseMatrix& a, const SparseMatrix& m);

struct FemEstimate {
  std::vector<int> levels;
  std::vector<double> mu;         ///< one value per level
  std::vector<double> residuals;
  double extrapolated = 0.0;      ///< (4 μ_fine − μ_coarse)/3
};

/// FEM eigenvalue at levels [top − count + 1, top], Richardson over the top two.
FemEstimate fem_eigenvalue(const ConformalMap& map, const DensityField& rho, int top_level,
                           int count = 2);

/// max over trial functions {x, y, min(log 1/r, log 1/δ)} of
/// ‖u − med u‖_{L^M(𝔻)} / ‖∇u‖_{L²(𝔻)}: a lower estimate of B_{M,2}(𝔻).
/// The family has trial_family_size members (≥ 8); larger families contain
/// the smaller ones.
double b_m2_disk_estimate(int trial_family_size, const YoungFunction& m);

}  // namespace dnb
