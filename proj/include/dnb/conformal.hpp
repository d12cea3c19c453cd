#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dnb/orlicz.hpp"
#include "dnb/quadrature.hpp"

namespace dnb {

enum class MapKind { Identity, PerturbedPower, Polynomial, MoebiusDisk };

/// Analytic univalent map φ: 𝔻 → Ω.
///
/// Polynomial-type maps (Identity, PerturbedPower, Polynomial) are accepted
/// only if Re φ′ > 0 on a boundary-refined grid of the closed disk, which by
/// Noshiro–Warschawski makes them univalent. Disk automorphisms are univalent
/// by construction.
class ConformalMap {
 public:
  static ConformalMap identity();
  /// φ(z) = z + (c/k)·z^k, k ≥ 2.
  static ConformalMap perturbed_power(Complex c, int k);
  /// φ(z) = Σ a_j z^j with coeffs[j] = a_j.
  static ConformalMap polynomial(std::vector<Complex> coeffs);
  /// φ(z) = (z + a)/(1 + ā z), |a| < 1.
  static ConformalMap moebius(Complex a);

  MapKind kind() const { return kind_; }
  const std::string& name() const { return name_; }

  /// φ(z) for |z| ≤ 1.
  Complex operator()(Complex z) const;
  Complex derivative(Complex z) const;
  /// |φ′(z)|²; DomainError unless |z| < 1.
  double jacobian(Complex z) const;
  /// |φ′(z)|² on the closed disk (mesh vertices sit on |z| = 1).
  double jacobian_closed(Complex z) const;
  /// J_{φ⁻¹}(φ(z)) = 1 / J_φ(z).
  double inverse_jacobian_at_preimage(Complex z) const { return 1.0 / jacobian(z); }

  /// Exact |Ω| where known.
  std::optional<double> closed_form_area() const;
  /// An analytic upper bound for sup_𝔻 |φ′| (exact for the one-term families).
  double derivative_bound() const;
  /// Smallest Re φ′ found by the univalence check (NaN when not applicable).
  double univalence_margin() const { return margin_; }

 private:
  MapKind kind_ = MapKind::Identity;
  std::string name_;
  std::vector<Complex> coeffs_;  // polynomial kinds
  Complex a_{0.0, 0.0};          // Moebius
  double margin_ = 0.0;

  void certify();
};

/// Σ wᵢ J_φ(zᵢ).
double image_area(const ConformalMap& map, const DiskQuadrature& quad);

struct AlphaRegularity {
  double integral = 0.0;        ///< Σ wᵢ J_φ(zᵢ)^{α/2}
  double analytic_bound = 0.0;  ///< π·(sup|φ′|)^α
};

AlphaRegularity alpha_regularity_integral(const ConformalMap& map, double alpha,
                                          const DiskQuadrature& quad);

/// J_φ at every quadrature node.
std::vector<double> jacobians(const ConformalMap& map, const DiskQuadrature& quad);

/// Measure dx = J_φ dy on Ω, carried on the disk nodes.
MeasurePtr pullback_measure(const ConformalMap& map, const DiskQuadrature& quad);

}  // namespace dnb
