#pragma once

#include <string>
#include <utility>
#include <vector>

#include "dnb/conformal.hpp"
#include "dnb/orlicz.hpp"

namespace dnb {

enum class DensityKind {
  Constant,                 ///< ρ ≡ c
  Gaussian,                 ///< ρ(x) = e^{−n|x|²}
  PullbackJacobianPower,    ///< ρ = J_{φ⁻¹}^e, i.e. ρ(φ(y)) = J_φ(y)^{−e}
  PullbackOrliczCanceling,  ///< ρ = J_{φ⁻¹}·Φ_ε^{-1}(1/J_{φ⁻¹})
  RadialTable,              ///< ρ(x) interpolated in |x| from samples
};

/// Positive density on Ω, evaluated through its pullback to the disk: every
/// accessor takes the preimage y ∈ 𝔻 of the point x = φ(y).
class DensityField {
 public:
  static DensityField constant(double c);
  static DensityField gaussian(double n);
  static DensityField pullback_jacobian_power(double exponent);
  static DensityField pullback_orlicz_canceling(double eps);
  /// (|x|, ρ) samples with increasing radii, linear interpolation, constant
  /// extension on both ends.
  static DensityField radial_table(std::vector<std::pair<double, double>> samples);

  DensityKind kind() const { return kind_; }
  std::string name() const;
  double scale() const { return scale_; }
  double param() const { return param_; }

  /// c·ρ.
  DensityField scaled(double c) const;

  /// log ρ(φ(y)); finite even where ρ itself underflows.
  double log_at(const ConformalMap& map, Complex y) const;
  double at(const ConformalMap& map, Complex y) const;

 private:
  DensityKind kind_ = DensityKind::Constant;
  double scale_ = 1.0;
  double param_ = 0.0;
  std::vector<std::pair<double, double>> table_;
};

struct PullbackSamples {
  std::vector<double> log_rho;    ///< log ρ(φ(yᵢ))
  std::vector<double> log_jac;    ///< log J_φ(yᵢ)
  SampledFunction rho;            ///< ρ(φ(yᵢ)) on the disk measure
  SampledFunction rho_jacobian;   ///< ρ(φ(yᵢ))·J_φ(yᵢ), the pullback of ρ/J_{φ⁻¹}
};

/// Samples ρ∘φ at the quadrature nodes. DensityError if any sample is not
/// positive.
PullbackSamples pullback_density(const DensityField& rho, const ConformalMap& map,
                                 const DiskQuadrature& quad);

}  // namespace dnb
