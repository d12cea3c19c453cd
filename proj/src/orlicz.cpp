#include "dnb/orlicz.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "dnb/error.hpp"
#include "dnb/kernels.hpp"

namespace dnb {

MeasurePtr make_measure(std::string id, std::vector<double> weights) {
  if (weights.empty()) throw ParameterError("measure: no nodes");
  for (double w : weights) {
    if (!(w > 0.0) || !std::isfinite(w)) throw ParameterError("measure: weights must be positive");
  }
  auto m = std::make_shared<Measure>();
  m->id = std::move(id);
  m->total = kernels::sum(weights.size(), [&](std::size_t i) { return weights[i]; });
  m->weights = std::move(weights);
  return m;
}

MeasurePtr disk_measure(const DiskQuadrature& quad) {
  const auto w = quad.weights();
  return make_measure(quad.id(), std::vector<double>(w.begin(), w.end()));
}

SampledFunction::SampledFunction(MeasurePtr measure, std::vector<double> values)
    : measure_(std::move(measure)), values_(std::move(values)) {
  if (!measure_) throw ParameterError("sampled function: null measure");
  if (values_.size() != measure_->weights.size()) {
    throw ParameterError("sampled function: " + std::to_string(values_.size()) +
                         " values for a measure with " +
                         std::to_string(measure_->weights.size()) + " nodes");
  }
  for (double v : values_) {
    if (!std::isfinite(v)) throw DomainError("sampled function: non-finite value");
  }
}

SampledFunction SampledFunction::scaled(double c) const {
  std::vector<double> v(values_);
  for (double& x : v) x *= c;
  return SampledFunction(measure_, std::move(v));
}

namespace {

// log Σ wᵢ Y(|fᵢ| e^{-L}) over the nonzero samples.
double log_modular(const std::vector<double>& log_abs, const std::vector<double>& log_w,
                   const YoungFunction& y, double log_lambda) {
  return kernels::log_sum_exp(log_abs.size(), [&](std::size_t i) {
    return log_w[i] + y.log_eval_at_log(log_abs[i] - log_lambda);
  });
}

}  // namespace

double luxemburg_norm(const SampledFunction& f, const YoungFunction& y) {
  std::vector<double> log_abs;
  std::vector<double> log_w;
  double w_min = std::numeric_limits<double>::infinity();
  double f_max = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double a = std::abs(f.values()[i]);
    w_min = std::min(w_min, f.weights()[i]);
    if (a == 0.0) continue;
    f_max = std::max(f_max, a);
    log_abs.push_back(std::log(a));
    log_w.push_back(std::log(f.weights()[i]));
  }
  if (log_abs.empty()) return 0.0;

  const auto excess = [&](double log_lambda) {
    return log_modular(log_abs, log_w, y, log_lambda);
  };
  double lo = std::log(f_max) - y.log_inverse_at_log(-std::log(w_min));
  double hi = std::log(f_max) - y.log_inverse_at_log(-std::log(f.total_measure()));
  if (lo > hi) std::swap(lo, hi);
  int expansions = 0;
  while (excess(hi) > 0.0) {
    hi += std::max(1.0, std::abs(hi));
    if (++expansions > 2048) throw ConvergenceError("luxemburg_norm: upper bracket failed");
  }
  while (!(excess(lo) > 0.0)) {
    lo -= std::max(1.0, std::abs(lo));
    if (++expansions > 2048) throw ConvergenceError("luxemburg_norm: lower bracket failed");
  }
  for (int it = 0; it < 200 && hi - lo > 1e-14 * std::max(1.0, std::abs(hi)); ++it) {
    const double mid = 0.5 * (lo + hi);
    if (excess(mid) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return std::exp(hi);
}

std::pair<double, double> orlicz_norm_bracket(const SampledFunction& f, const YoungFunction& y) {
  const double n = luxemburg_norm(f, y);
  return {n, 2.0 * n};
}

HolderPairing holder_pairing(const SampledFunction& f, const SampledFunction& g,
                             const YoungFunction& y) {
  if (f.measure() != g.measure() && f.measure_id() != g.measure_id()) {
    throw ParameterError("holder_pairing: functions live on different measures");
  }
  if (f.size() != g.size()) throw ParameterError("holder_pairing: size mismatch");
  HolderPairing out;
  out.lhs = kernels::sum(f.size(), [&](std::size_t i) {
    return f.weights()[i] * std::abs(f.values()[i] * g.values()[i]);
  });
  const double nf = luxemburg_norm(f, y);
  if (nf == 0.0) return out;
  out.rhs = 2.0 * nf * luxemburg_norm(g, complementary(y));
  return out;
}

double weighted_median(const SampledFunction& f) {
  const std::size_t n = f.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return f.values()[a] < f.values()[b]; });
  const double half = 0.5 * f.total_measure();
  const double slack = 1e-12 * f.total_measure();
  // Walk downwards: mass strictly above the current value.
  double above = 0.0;
  double best = f.values()[order[n - 1]];
  std::size_t i = n;
  while (i > 0) {
    const double v = f.values()[order[i - 1]];
    if (above > half + slack) break;
    best = v;
    // Absorb every node tied at v before moving below it.
    while (i > 0 && f.values()[order[i - 1]] == v) {
      above += f.weights()[order[i - 1]];
      --i;
    }
  }
  return std::max(0.0, best);
}

}  // namespace dnb
