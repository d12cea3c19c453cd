#pragma once

#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dnb/quadrature.hpp"
#include "dnb/young.hpp"

namespace dnb {

/// Discrete measure: positive weights on an implicit node set.
struct Measure {
  std::string id;
  std::vector<double> weights;
  double total = 0.0;
};

using MeasurePtr = std::shared_ptr<const Measure>;

/// Weights must be positive and finite.
MeasurePtr make_measure(std::string id, std::vector<double> weights);
/// Lebesgue measure on 𝔻 as seen by the quadrature rule.
MeasurePtr disk_measure(const DiskQuadrature& quad);

/// Function values aligned with the nodes of a measure.
class SampledFunction {
 public:
  SampledFunction(MeasurePtr measure, std::vector<double> values);

  std::span<const double> values() const { return values_; }
  std::span<const double> weights() const { return measure_->weights; }
  const MeasurePtr& measure() const { return measure_; }
  const std::string& measure_id() const { return measure_->id; }
  double total_measure() const { return measure_->total; }
  std::size_t size() const { return values_.size(); }

  SampledFunction scaled(double c) const;

 private:
  MeasurePtr measure_;
  std::vector<double> values_;
};

/// inf{λ > 0 : Σ wᵢ Y(|fᵢ|/λ) ≤ 1}, bisection in log λ. The returned λ is on
/// the feasible side; relative accuracy about 1e-13.
double luxemburg_norm(const SampledFunction& f, const YoungFunction& y);

/// (‖f‖, 2‖f‖): a guaranteed bracket for the Orlicz (dual) norm.
std::pair<double, double> orlicz_norm_bracket(const SampledFunction& f, const YoungFunction& y);

struct HolderPairing {
  double lhs = 0.0;  ///< Σ wᵢ |fᵢ gᵢ|
  double rhs = 0.0;  ///< 2 ‖f‖_Y ‖g‖_{Y*}
};

/// Both functions must live on the same measure.
HolderPairing holder_pairing(const SampledFunction& f, const SampledFunction& g,
                             const YoungFunction& y);

/// inf{t ≥ 0 : |{f > t}| ≤ total/2}, evaluated over the sampled values.
double weighted_median(const SampledFunction& f);

}  // namespace dnb
