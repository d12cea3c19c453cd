#pragma once

#include <complex>
#include <span>
#include <string>
#include <vector>

#include "dnb/kernels.hpp"

namespace dnb {

using Complex = std::complex<double>;

struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point Gauss–Legendre rule on [a, b].
GaussLegendreRule gauss_legendre(int n, double a = -1.0, double b = 1.0);

/// Tensor-product rule on the open unit disk: Gauss–Legendre in t = r² and the
/// periodic trapezoidal rule in θ. Weights are positive and sum to π; no node
/// lies on |z| = 1.
class DiskQuadrature {
 public:
  DiskQuadrature() = default;

  std::span<const Complex> nodes() const { return nodes_; }
  std::span<const double> weights() const { return weights_; }
  std::size_t size() const { return nodes_.size(); }
  int radial_order() const { return n_r_; }
  int angular_order() const { return n_theta_; }
  const std::string& id() const { return id_; }
  double max_radius() const { return max_radius_; }

  /// Σ wᵢ f(zᵢ).
  template <class F>
  double integrate(F&& f) const {
    return kernels::sum(size(), [&](std::size_t i) { return weights_[i] * f(nodes_[i]); });
  }

  friend DiskQuadrature build_disk_quadrature(int n_r, int n_theta);
  friend DiskQuadrature build_graded_disk_quadrature(int n_r_per_panel, int n_theta, int panels,
                                                     double t_min);

 private:
  std::vector<Complex> nodes_;
  std::vector<double> weights_;
  int n_r_ = 0;
  int n_theta_ = 0;
  double max_radius_ = 0.0;
  std::string id_;
};

/// Requires n_r ≥ 4 and n_theta ≥ 8, otherwise ConfigError.
DiskQuadrature build_disk_quadrature(int n_r, int n_theta);

/// Composite variant for sharply peaked integrands near the origin: the
/// t = r² interval is split into [0, t_min] followed by geometrically growing
/// panels up to 1, each carrying an n_r_per_panel Gauss–Legendre rule.
DiskQuadrature build_graded_disk_quadrature(int n_r_per_panel, int n_theta, int panels,
                                            double t_min);

}  // namespace dnb
