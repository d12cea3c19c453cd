#include "dnb/density.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "dnb/error.hpp"
#include "dnb/kernels.hpp"
#include "dnb/young.hpp"

namespace dnb {

DensityField DensityField::constant(double c) {
  if (!(c > 0.0) || !std::isfinite(c)) throw DensityError("constant density must be positive");
  DensityField d;
  d.kind_ = DensityKind::Constant;
  d.scale_ = c;
  return d;
}

DensityField DensityField::gaussian(double n) {
  if (!(n > 0.0) || !std::isfinite(n)) throw ParameterError("gaussian density: n must be > 0");
  DensityField d;
  d.kind_ = DensityKind::Gaussian;
  d.param_ = n;
  return d;
}

DensityField DensityField::pullback_jacobian_power(double exponent) {
  if (!std::isfinite(exponent)) throw ParameterError("jacobian power: exponent must be finite");
  DensityField d;
  d.kind_ = DensityKind::PullbackJacobianPower;
  d.param_ = exponent;
  return d;
}

DensityField DensityField::pullback_orlicz_canceling(double eps) {
  if (!(eps >= 1.0) || !std::isfinite(eps)) throw ParameterError("canceling density: eps >= 1");
  DensityField d;
  d.kind_ = DensityKind::PullbackOrliczCanceling;
  d.param_ = eps;
  return d;
}

DensityField DensityField::radial_table(std::vector<std::pair<double, double>> samples) {
  if (samples.size() < 2) throw DensityError("radial table: need at least two samples");
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto [r, v] = samples[i];
    if (!(r >= 0.0) || !std::isfinite(r)) throw DensityError("radial table: bad radius");
    if (!(v > 0.0) || !std::isfinite(v)) throw DensityError("radial table: values must be positive");
    if (i > 0 && !(r > samples[i - 1].first)) throw DensityError("radial table: radii must increase");
  }
  DensityField d;
  d.kind_ = DensityKind::RadialTable;
  d.table_ = std::move(samples);
  return d;
}

std::string DensityField::name() const {
  std::ostringstream os;
  switch (kind_) {
    case DensityKind::Constant:
      os << "constant";
      break;
    case DensityKind::Gaussian:
      os << "gaussian(n=" << param_ << ")";
      break;
    case DensityKind::PullbackJacobianPower:
      os << "jacobian_power(e=" << param_ << ")";
      break;
    case DensityKind::PullbackOrliczCanceling:
      os << "orlicz_canceling(eps=" << param_ << ")";
      break;
    case DensityKind::RadialTable:
      os << "radial_table(" << table_.size() << ")";
      break;
  }
  if (scale_ != 1.0) os << "*" << scale_;
  return os.str();
}

DensityField DensityField::scaled(double c) const {
  if (!(c > 0.0) || !std::isfinite(c)) throw DensityError("density scale must be positive");
  DensityField d = *this;
  d.scale_ *= c;
  return d;
}

double DensityField::log_at(const ConformalMap& map, Complex y) const {
  double base = 0.0;
  switch (kind_) {
    case DensityKind::Constant:
      break;
    case DensityKind::Gaussian:
      base = -param_ * std::norm(map(y));
      break;
    case DensityKind::PullbackJacobianPower:
      base = -param_ * std::log(map.jacobian_closed(y));
      break;
    case DensityKind::PullbackOrliczCanceling: {
      // ρ(φ(y)) = Φ_ε^{-1}(J)/J
      const double log_j = std::log(map.jacobian_closed(y));
      base = YoungFunction::log_pow(param_).log_inverse_at_log(log_j) - log_j;
      break;
    }
    case DensityKind::RadialTable: {
      const double r = std::abs(map(y));
      double v;
      if (r <= table_.front().first) {
        v = table_.front().second;
      } else if (r >= table_.back().first) {
        v = table_.back().second;
      } else {
        const auto it = std::upper_bound(table_.begin(), table_.end(), r,
                                         [](double x, const auto& p) { return x < p.first; });
        const auto& [r1, v1] = *it;
        const auto& [r0, v0] = *(it - 1);
        v = v0 + (v1 - v0) * (r - r0) / (r1 - r0);
      }
      base = std::log(v);
      break;
    }
  }
  const double out = base + std::log(scale_);
  if (std::isnan(out) || out == -std::numeric_limits<double>::infinity()) {
    throw DensityError("density " + name() + " is not positive at a sample point");
  }
  return out;
}

double DensityField::at(const ConformalMap& map, Complex y) const {
  return std::exp(log_at(map, y));
}

PullbackSamples pullback_density(const DensityField& rho, const ConformalMap& map,
                                 const DiskQuadrature& quad) {
  const auto nodes = quad.nodes();
  const std::size_t n = nodes.size();
  std::vector<double> log_rho =
      kernels::map<double>(n, [&](std::size_t i) { return rho.log_at(map, nodes[i]); });
  std::vector<double> log_jac =
      kernels::map<double>(n, [&](std::size_t i) { return std::log(map.jacobian(nodes[i])); });
  std::vector<double> r(n);
  std::vector<double> rj(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(log_rho[i])) throw DensityError("density sample is not finite");
    r[i] = std::exp(log_rho[i]);
    rj[i] = std::exp(log_rho[i] + log_jac[i]);
  }
  const MeasurePtr m = disk_measure(quad);
  return PullbackSamples{std::move(log_rho), std::move(log_jac), SampledFunction(m, std::move(r)),
                         SampledFunction(m, std::move(rj))};
}

}  // namespace dnb
