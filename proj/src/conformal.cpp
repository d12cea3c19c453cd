#include "dnb/conformal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "dnb/error.hpp"
#include "dnb/kernels.hpp"

namespace dnb {

namespace {

std::string fmt_complex(Complex c) {
  std::ostringstream os;
  os << c.real();
  if (c.imag() != 0.0) os << (c.imag() < 0 ? "" : "+") << c.imag() << "i";
  return os.str();
}

Complex horner(const std::vector<Complex>& a, Complex z) {
  Complex s{0.0, 0.0};
  for (std::size_t j = a.size(); j-- > 0;) s = s * z + a[j];
  return s;
}

Complex horner_derivative(const std::vector<Complex>& a, Complex z) {
  Complex s{0.0, 0.0};
  for (std::size_t j = a.size(); j-- > 1;) s = s * z + static_cast<double>(j) * a[j];
  return s;
}

}  // namespace

ConformalMap ConformalMap::identity() {
  ConformalMap m;
  m.kind_ = MapKind::Identity;
  m.name_ = "identity";
  m.coeffs_ = {0.0, 1.0};
  m.margin_ = 1.0;
  return m;
}

ConformalMap ConformalMap::perturbed_power(Complex c, int k) {
  if (k < 2) throw ParameterError("perturbed_power: k must be >= 2");
  if (!(std::abs(c) < 1.0)) throw ParameterError("perturbed_power: |c| must be < 1");
  ConformalMap m;
  m.kind_ = MapKind::PerturbedPower;
  m.name_ = "perturbed_power(c=" + fmt_complex(c) + ",k=" + std::to_string(k) + ")";
  m.coeffs_.assign(static_cast<std::size_t>(k) + 1, Complex{0.0, 0.0});
  m.coeffs_[1] = 1.0;
  m.coeffs_[static_cast<std::size_t>(k)] = c / static_cast<double>(k);
  m.certify();
  return m;
}

ConformalMap ConformalMap::polynomial(std::vector<Complex> coeffs) {
  while (!coeffs.empty() && coeffs.back() == Complex{0.0, 0.0}) coeffs.pop_back();
  if (coeffs.size() < 2) throw ParameterError("polynomial: degree must be >= 1");
  ConformalMap m;
  m.kind_ = MapKind::Polynomial;
  std::ostringstream os;
  os << "polynomial(";
  for (std::size_t j = 0; j < coeffs.size(); ++j) os << (j ? "," : "") << fmt_complex(coeffs[j]);
  os << ")";
  m.name_ = os.str();
  m.coeffs_ = std::move(coeffs);
  m.certify();
  return m;
}

ConformalMap ConformalMap::moebius(Complex a) {
  if (!(std::abs(a) < 1.0)) throw ParameterError("moebius: |a| must be < 1");
  ConformalMap m;
  m.kind_ = MapKind::MoebiusDisk;
  m.name_ = "moebius(a=" + fmt_complex(a) + ")";
  m.a_ = a;
  m.margin_ = std::numeric_limits<double>::quiet_NaN();
  return m;
}

void ConformalMap::certify() {
  // Re φ′ is harmonic, so its minimum over the closed disk sits on |z| = 1;
  // interior rings are sampled as a cross-check.
  constexpr int kBoundary = 8192;
  const double boundary_min = kernels::max(kBoundary, [&](std::size_t j) {
    const double t = 2.0 * std::numbers::pi * static_cast<double>(j) / kBoundary;
    return -derivative(std::polar(1.0, t)).real();
  });
  double interior_min = -boundary_min;
  for (double r : {0.0, 0.25, 0.5, 0.75, 0.9, 0.99}) {
    for (int j = 0; j < 256; ++j) {
      const double t = 2.0 * std::numbers::pi * j / 256.0;
      interior_min = std::min(interior_min, derivative(std::polar(r, t)).real());
    }
  }
  margin_ = std::min(-boundary_min, interior_min);
  if (!(margin_ > 0.0)) {
    throw ParameterError("map " + name_ + " fails the univalence certificate (min Re phi' = " +
                         std::to_string(margin_) + ")");
  }
}

Complex ConformalMap::operator()(Complex z) const {
  if (!(std::abs(z) <= 1.0 + 1e-12)) throw DomainError("conformal map: point outside the disk");
  if (kind_ == MapKind::MoebiusDisk) return (z + a_) / (1.0 + std::conj(a_) * z);
  return horner(coeffs_, z);
}

Complex ConformalMap::derivative(Complex z) const {
  if (kind_ == MapKind::MoebiusDisk) {
    const Complex d = 1.0 + std::conj(a_) * z;
    return (1.0 - std::norm(a_)) / (d * d);
  }
  return horner_derivative(coeffs_, z);
}

double ConformalMap::jacobian(Complex z) const {
  if (!(std::abs(z) < 1.0)) throw DomainError("jacobian: |z| must be < 1");
  return std::norm(derivative(z));
}

double ConformalMap::jacobian_closed(Complex z) const {
  if (!(std::abs(z) <= 1.0 + 1e-12)) throw DomainError("jacobian: point outside the disk");
  return std::norm(derivative(z));
}

std::optional<double> ConformalMap::closed_form_area() const {
  if (kind_ == MapKind::MoebiusDisk) return std::numbers::pi;
  // Powers are orthogonal on 𝔻: ∫|Σ j a_j z^{j−1}|² = π Σ j |a_j|².
  double s = 0.0;
  for (std::size_t j = 1; j < coeffs_.size(); ++j) s += static_cast<double>(j) * std::norm(coeffs_[j]);
  return std::numbers::pi * s;
}

double ConformalMap::derivative_bound() const {
  if (kind_ == MapKind::MoebiusDisk) {
    const double r = std::abs(a_);
    return (1.0 + r) / (1.0 - r);
  }
  double s = 0.0;
  for (std::size_t j = 1; j < coeffs_.size(); ++j) s += static_cast<double>(j) * std::abs(coeffs_[j]);
  return s;
}

std::vector<double> jacobians(const ConformalMap& map, const DiskQuadrature& quad) {
  const auto nodes = quad.nodes();
  return kernels::map<double>(nodes.size(), [&](std::size_t i) { return map.jacobian(nodes[i]); });
}

double image_area(const ConformalMap& map, const DiskQuadrature& quad) {
  return quad.integrate([&](Complex z) { return map.jacobian(z); });
}

AlphaRegularity alpha_regularity_integral(const ConformalMap& map, double alpha,
                                          const DiskQuadrature& quad) {
  if (!(alpha > 2.0)) throw ParameterError("alpha_regularity_integral: alpha must be > 2");
  AlphaRegularity out;
  out.integral = quad.integrate([&](Complex z) { return std::pow(map.jacobian(z), 0.5 * alpha); });
  out.analytic_bound = std::numbers::pi * std::pow(map.derivative_bound(), alpha);
  return out;
}

MeasurePtr pullback_measure(const ConformalMap& map, const DiskQuadrature& quad) {
  const std::vector<double> j = jacobians(map, quad);
  std::vector<double> w(quad.size());
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = quad.weights()[i] * j[i];
  return make_measure(quad.id() + "|" + map.name(), std::move(w));
}

}  // namespace dnb
