#include "dnb/young.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <sstream>
#include <variant>

#include "dnb/error.hpp"
#include "dnb/kernels.hpp"

namespace dnb {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kE = std::numbers::e;

std::string fmt_num(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

/// log(e^x − 1) for x = e^{log_x}.
double log_expm1_at_log(double log_x) {
  const double x = std::exp(log_x);
  if (std::isinf(x)) return kInf;
  if (x > 40.0) return x + std::log1p(-std::exp(-x));
  if (x < 1e-5) return log_x + std::log1p(x / 2.0 + x * x / 6.0);
  return std::log(std::expm1(x));
}

/// log(log(u + e)) for u = e^{log_u}.
double log_log_e_plus_at_log(double log_u) {
  if (log_u > 36.0) return std::log(log_u + std::log1p(kE * std::exp(-log_u)));
  const double u = std::exp(log_u);
  return std::log1p(std::log1p(u / kE));
}

/// log(log(1 + e^{log_t})).
double log_log1p_exp(double log_t) {
  if (log_t < -30.0) return log_t - 0.5 * std::exp(log_t);
  if (log_t > 30.0) return std::log(log_t + std::log1p(std::exp(-log_t)));
  return std::log(std::log1p(std::exp(log_t)));
}

double log_pow_log_at_log(double eps, double log_u) {
  return log_u + eps * log_log_e_plus_at_log(log_u);
}

/// Smallest s (to double resolution) with f(s) ≥ target, f non-decreasing.
template <class F>
double bisect_log_inverse(F&& f, double target) {
  double lo = std::isfinite(target) ? target : 0.0;
  double hi = lo;
  double step = 1.0;
  int expansions = 0;
  while (!(f(hi) >= target)) {
    lo = hi;
    hi += step;
    step *= 2.0;
    if (++expansions > 2048 || !std::isfinite(hi)) {
      throw ConvergenceError("inverse: upper bracket expansion failed");
    }
  }
  step = 1.0;
  while (!(f(lo) < target)) {
    hi = lo;
    lo -= step;
    step *= 2.0;
    if (++expansions > 2048 || !std::isfinite(lo)) {
      throw ConvergenceError("inverse: lower bracket expansion failed");
    }
  }
  for (int i = 0; i < 4096; ++i) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) break;
    if (f(mid) < target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return hi;
}

double log_pow_log_inverse_at_log(double eps, double log_t) {
  return bisect_log_inverse([eps](double s) { return log_pow_log_at_log(eps, s); }, log_t);
}

void check_arg(double u, const char* what) {
  if (!(u >= 0.0) || !std::isfinite(u)) {
    throw DomainError(std::string(what) + ": argument must be finite and non-negative");
  }
}

// ---------------------------------------------------------------------------
// Kinds

struct PowerP {
  double p;
  double a;
};
struct ExpSquare {};
struct ExpPow {
  double eps;
};
struct LogPow {
  double eps;  // 1 for LogLinear
};
struct LogLinearTilde {};
struct ExpLinear {};
struct PsiEpsAlpha {
  double eps;
  double alpha;
  double gamma;      // (α − 2) / 2
  double threshold;  // Φ_ε(1); Ψ vanishes below it

  // Parametrisation by w = Φ_ε^{-1}(t) ≥ 1.
  double t_of(double w) const { return w * std::pow(1.0 + std::log1p(w / kE), eps); }
  double y_of(double w) const {
    if (w <= 1.0) return 0.0;
    const double inner = w * kE * std::expm1(std::pow(w, 1.0 / eps) - 1.0);
    return (2.0 / alpha) * std::pow(inner, gamma);
  }
};
struct Custom {
  std::vector<double> u;
  std::vector<double> y;
};
struct Complement {
  YoungFunction of;
  // Supporting-line table of the base curve, parametrised by s.
  std::vector<double> s;
  std::vector<double> u;
  std::vector<double> y;
  std::function<std::pair<double, double>(double)> curve;  // s ↦ (u, Y(u))
};

using Variant = std::variant<PowerP, ExpSquare, ExpPow, LogPow, LogLinearTilde, ExpLinear,
                             PsiEpsAlpha, Custom, Complement>;

}  // namespace

struct YoungFunction::Impl {
  YoungKind kind;
  Variant v;
  std::vector<double> params;
  std::string name;
};

namespace {

double tilde_eval(double u) {
  if (u < 1e-2) {
    // Σ_{k≥2} (−1)^k u^k / (k(k−1))
    double term = u * u;
    double s = 0.0;
    for (int k = 2; k < 30; ++k) {
      s += ((k % 2 == 0) ? 1.0 : -1.0) * term / (k * (k - 1.0));
      term *= u;
    }
    return s;
  }
  return (1.0 + u) * std::log1p(u) - u;
}

double custom_eval(const Custom& c, double u) {
  const std::size_t n = c.u.size();
  if (u >= c.u[n - 1]) {
    const double slope = (c.y[n - 1] - c.y[n - 2]) / (c.u[n - 1] - c.u[n - 2]);
    return c.y[n - 1] + slope * (u - c.u[n - 1]);
  }
  const auto it = std::upper_bound(c.u.begin(), c.u.end(), u);
  const std::size_t k = static_cast<std::size_t>(it - c.u.begin()) - 1;
  const double f = (u - c.u[k]) / (c.u[k + 1] - c.u[k]);
  return c.y[k] + f * (c.y[k + 1] - c.y[k]);
}

double complement_eval(const Complement& c, double v) {
  if (v == 0.0) return 0.0;
  const std::size_t n = c.u.size();
  double best = 0.0;
  // First table index where the base slope exceeds v.
  std::size_t lo = 0;
  std::size_t hi = n - 1;
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (c.y[mid + 1] - c.y[mid] <= v * (c.u[mid + 1] - c.u[mid])) {
      lo = mid + 1;
    } else {
      hi = mid;
    }
  }
  const std::size_t k = lo;
  const std::size_t a = k == 0 ? 0 : k - 1;
  const std::size_t b = std::min(n - 1, k + 1);
  for (std::size_t i = a; i <= b; ++i) best = std::max(best, c.u[i] * v - c.y[i]);

  // Golden-section ascent of the concave objective on [s_a, s_b].
  const auto objective = [&](double s) {
    const auto [u, y] = c.curve(s);
    const double val = u * v - y;
    return std::isnan(val) ? -kInf : val;
  };
  constexpr double invphi = 0.6180339887498949;
  double x0 = c.s[a];
  double x3 = c.s[b];
  double x1 = x3 - invphi * (x3 - x0);
  double x2 = x0 + invphi * (x3 - x0);
  double f1 = objective(x1);
  double f2 = objective(x2);
  for (int it = 0; it < 200 && (x3 - x0) > 1e-15 * std::max(1.0, std::abs(x3)); ++it) {
    if (f1 < f2) {
      x0 = x1;
      x1 = x2;
      f1 = f2;
      x2 = x0 + invphi * (x3 - x0);
      f2 = objective(x2);
    } else {
      x3 = x2;
      x2 = x1;
      f2 = f1;
      x1 = x3 - invphi * (x3 - x0);
      f1 = objective(x1);
    }
  }
  best = std::max({best, f1, f2});
  return best;
}

double eval_impl(const YoungFunction::Impl& m, double u) {
  return std::visit(
      [u](const auto& k) -> double {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, PowerP>) {
          return k.a * std::pow(u, k.p);
        } else if constexpr (std::is_same_v<K, ExpSquare>) {
          return std::expm1(u * u);
        } else if constexpr (std::is_same_v<K, ExpPow>) {
          return std::expm1(std::pow(u, 2.0 / k.eps));
        } else if constexpr (std::is_same_v<K, LogPow>) {
          if (u == 0.0) return 0.0;
          return u * std::pow(1.0 + std::log1p(u / kE), k.eps);
        } else if constexpr (std::is_same_v<K, LogLinearTilde>) {
          return tilde_eval(u);
        } else if constexpr (std::is_same_v<K, ExpLinear>) {
          return std::expm1(u);
        } else if constexpr (std::is_same_v<K, PsiEpsAlpha>) {
          if (u <= k.threshold) return 0.0;
          const double w = std::exp(log_pow_log_inverse_at_log(k.eps, std::log(u)));
          return k.y_of(w);
        } else if constexpr (std::is_same_v<K, Custom>) {
          return custom_eval(k, u);
        } else {
          return complement_eval(k, u);
        }
      },
      m.v);
}

double log_eval_at_log_impl(const YoungFunction::Impl& m, double s) {
  return std::visit(
      [&m, s](const auto& k) -> double {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, PowerP>) {
          return std::log(k.a) + k.p * s;
        } else if constexpr (std::is_same_v<K, ExpSquare>) {
          return log_expm1_at_log(2.0 * s);
        } else if constexpr (std::is_same_v<K, ExpPow>) {
          return log_expm1_at_log(2.0 * s / k.eps);
        } else if constexpr (std::is_same_v<K, ExpLinear>) {
          return log_expm1_at_log(s);
        } else if constexpr (std::is_same_v<K, LogPow>) {
          return log_pow_log_at_log(k.eps, s);
        } else if constexpr (std::is_same_v<K, LogLinearTilde>) {
          if (s > 30.0) {
            const double l1 = s + std::log1p(std::exp(-s));
            return s + std::log(l1 - 1.0 + l1 * std::exp(-s));
          }
          if (s < -30.0) {
            const double u = std::exp(s);
            return 2.0 * s - std::log(2.0) + std::log1p(-u / 3.0);
          }
          return std::log(tilde_eval(std::exp(s)));
        } else if constexpr (std::is_same_v<K, PsiEpsAlpha>) {
          if (s <= std::log(k.threshold)) return -kInf;
          const double log_w = log_pow_log_inverse_at_log(k.eps, s);
          const double log_a = log_w / k.eps;
          const double a = std::exp(log_a);
          if (!(a > 1.0)) return -kInf;
          // log(e^a − e) = 1 + log(expm1(a − 1))
          const double log_gap = 1.0 + log_expm1_at_log(std::log(a - 1.0));
          return std::log(2.0 / k.alpha) + k.gamma * (log_w + log_gap);
        } else {
          const double u = std::exp(s);
          if (std::isinf(u)) return kInf;
          return std::log(eval_impl(m, u));
        }
      },
      m.v);
}

std::shared_ptr<YoungFunction::Impl> make(YoungKind kind, Variant v, std::vector<double> params,
                                          std::string name) {
  auto impl = std::make_shared<YoungFunction::Impl>();
  impl->kind = kind;
  impl->v = std::move(v);
  impl->params = std::move(params);
  impl->name = std::move(name);
  return impl;
}

void require(bool ok, const std::string& msg) {
  if (!ok) throw ParameterError(msg);
}

}  // namespace

// ---------------------------------------------------------------------------
// Construction

YoungFunction YoungFunction::power(double p) {
  require(p >= 1.0 && std::isfinite(p), "PowerP: p must be >= 1");
  return YoungFunction(make(YoungKind::PowerP, PowerP{p, 1.0 / p}, {p, 1.0 / p},
                            "PowerP(p=" + fmt_num(p) + ")"));
}

YoungFunction YoungFunction::power_scaled(double p, double a) {
  require(p >= 1.0 && std::isfinite(p), "PowerP: p must be >= 1");
  require(a > 0.0 && std::isfinite(a), "PowerP: scale must be positive");
  return YoungFunction(make(YoungKind::PowerP, PowerP{p, a}, {p, a},
                            "PowerP(p=" + fmt_num(p) + ",a=" + fmt_num(a) + ")"));
}

YoungFunction YoungFunction::exp_square() {
  return YoungFunction(make(YoungKind::ExpSquare, ExpSquare{}, {}, "ExpSquare"));
}

YoungFunction YoungFunction::exp_pow(double eps) {
  require(eps > 0.0 && std::isfinite(eps), "ExpPow: eps must be positive");
  return YoungFunction(
      make(YoungKind::ExpPow, ExpPow{eps}, {eps}, "ExpPow(eps=" + fmt_num(eps) + ")"));
}

YoungFunction YoungFunction::log_linear() {
  return YoungFunction(make(YoungKind::LogLinear, LogPow{1.0}, {1.0}, "LogLinear"));
}

YoungFunction YoungFunction::log_pow(double eps) {
  require(eps >= 1.0 && std::isfinite(eps), "LogPow: eps must be >= 1");
  return YoungFunction(
      make(YoungKind::LogPow, LogPow{eps}, {eps}, "LogPow(eps=" + fmt_num(eps) + ")"));
}

YoungFunction YoungFunction::log_linear_tilde() {
  return YoungFunction(make(YoungKind::LogLinearTilde, LogLinearTilde{}, {}, "LogLinearTilde"));
}

YoungFunction YoungFunction::exp_linear() {
  return YoungFunction(make(YoungKind::ExpLinear, ExpLinear{}, {}, "ExpLinear"));
}

YoungFunction YoungFunction::psi_alpha(double alpha) {
  require(alpha > 2.0 && std::isfinite(alpha), "PsiAlpha: alpha must be > 2");
  PsiEpsAlpha k{1.0, alpha, (alpha - 2.0) / 2.0, std::log1p(kE)};
  return YoungFunction(
      make(YoungKind::PsiAlpha, k, {1.0, alpha}, "PsiAlpha(alpha=" + fmt_num(alpha) + ")"));
}

YoungFunction YoungFunction::psi_eps_alpha(double eps, double alpha) {
  require(alpha > 2.0 && std::isfinite(alpha), "PsiEpsAlpha: alpha must be > 2");
  require(eps >= 1.0 && std::isfinite(eps), "PsiEpsAlpha: eps must be >= 1");
  PsiEpsAlpha k{eps, alpha, (alpha - 2.0) / 2.0, std::pow(std::log1p(kE), eps)};
  return YoungFunction(make(YoungKind::PsiEpsAlpha, k, {eps, alpha},
                            "PsiEpsAlpha(eps=" + fmt_num(eps) + ",alpha=" + fmt_num(alpha) + ")"));
}

YoungFunction YoungFunction::custom(std::vector<std::pair<double, double>> table) {
  std::sort(table.begin(), table.end());
  if (table.empty() || table.front().first != 0.0) table.insert(table.begin(), {0.0, 0.0});
  require(table.front().second == 0.0, "Custom: Y(0) must be 0");
  require(table.size() >= 3, "Custom: need at least two knots besides the origin");
  Custom c;
  for (const auto& [u, y] : table) {
    require(std::isfinite(u) && std::isfinite(y) && u >= 0.0 && y >= 0.0,
            "Custom: knots must be finite and non-negative");
    if (!c.u.empty()) require(u > c.u.back(), "Custom: duplicate abscissa");
    c.u.push_back(u);
    c.y.push_back(y);
  }
  double prev_slope = 0.0;
  for (std::size_t i = 0; i + 1 < c.u.size(); ++i) {
    const double slope = (c.y[i + 1] - c.y[i]) / (c.u[i + 1] - c.u[i]);
    const double scale = std::max(1.0, std::abs(slope));
    require(slope >= 0.0, "Custom: table must be non-decreasing");
    require(slope - prev_slope >= -1e-10 * scale, "Custom: table must be convex");
    prev_slope = slope;
  }
  require(prev_slope > 0.0, "Custom: last segment must be increasing");
  return YoungFunction(make(YoungKind::Custom, std::move(c), {}, "Custom"));
}

// ---------------------------------------------------------------------------
// Evaluation

YoungKind YoungFunction::kind() const { return impl_->kind; }
std::string YoungFunction::name() const { return impl_->name; }

double YoungFunction::param(int i) const {
  if (i < 0 || static_cast<std::size_t>(i) >= impl_->params.size()) {
    throw ParameterError("YoungFunction::param: index out of range");
  }
  return impl_->params[static_cast<std::size_t>(i)];
}

double YoungFunction::eval(double u) const {
  check_arg(u, "YoungFunction::eval");
  return eval_impl(*impl_, u);
}

double YoungFunction::log_eval(double u) const {
  check_arg(u, "YoungFunction::log_eval");
  if (u == 0.0) return -kInf;
  return log_eval_at_log_impl(*impl_, std::log(u));
}

double YoungFunction::log_eval_at_log(double log_u) const {
  if (std::isnan(log_u)) throw DomainError("YoungFunction::log_eval_at_log: NaN argument");
  if (log_u == -kInf) return -kInf;
  if (log_u == kInf) return kInf;
  return log_eval_at_log_impl(*impl_, log_u);
}

double YoungFunction::log_inverse_at_log(double log_t) const {
  if (std::isnan(log_t) || log_t == kInf) {
    throw DomainError("YoungFunction::log_inverse_at_log: argument must be finite");
  }
  if (log_t == -kInf) return -kInf;
  switch (impl_->kind) {
    case YoungKind::PowerP: {
      const auto& k = std::get<PowerP>(impl_->v);
      return (log_t - std::log(k.a)) / k.p;
    }
    case YoungKind::ExpSquare:
      return 0.5 * log_log1p_exp(log_t);
    case YoungKind::ExpPow:
      return 0.5 * std::get<ExpPow>(impl_->v).eps * log_log1p_exp(log_t);
    case YoungKind::ExpLinear:
      return log_log1p_exp(log_t);
    case YoungKind::LogLinear:
    case YoungKind::LogPow:
      return log_pow_log_inverse_at_log(std::get<LogPow>(impl_->v).eps, log_t);
    default:
      return bisect_log_inverse([this](double s) { return log_eval_at_log_impl(*impl_, s); },
                                log_t);
  }
}

double YoungFunction::inverse(double t) const {
  check_arg(t, "YoungFunction::inverse");
  if (t == 0.0) return 0.0;
  switch (impl_->kind) {
    case YoungKind::PowerP: {
      const auto& k = std::get<PowerP>(impl_->v);
      return std::pow(t / k.a, 1.0 / k.p);
    }
    case YoungKind::ExpSquare:
      return std::sqrt(std::log1p(t));
    case YoungKind::ExpPow:
      return std::pow(std::log1p(t), 0.5 * std::get<ExpPow>(impl_->v).eps);
    case YoungKind::ExpLinear:
      return std::log1p(t);
    default:
      return std::exp(log_inverse_at_log(std::log(t)));
  }
}

std::optional<double> YoungFunction::delta_prime_constant() const {
  switch (impl_->kind) {
    case YoungKind::LogLinear:
      return 2.0;
    case YoungKind::PowerP:
      return 1.0 / std::get<PowerP>(impl_->v).a;
    default:
      return std::nullopt;
  }
}

std::optional<double> YoungFunction::nabla_prime_constant() const { return std::nullopt; }

// ---------------------------------------------------------------------------
// Complementary function

YoungFunction complementary(const YoungFunction& y) {
  const auto& impl = *y.impl_;
  if (impl.kind == YoungKind::PowerP) {
    const auto& k = std::get<PowerP>(impl.v);
    if (k.p > 1.0) {
      const double q = k.p / (k.p - 1.0);
      const double b = (1.0 / q) * std::pow(k.a * k.p, -1.0 / (k.p - 1.0));
      if (std::abs(k.a * k.p - 1.0) < 1e-15) return YoungFunction::power(q);
      return YoungFunction::power_scaled(q, b);
    }
  }
  if (impl.kind == YoungKind::LogLinearTilde) return YoungFunction::exp_linear();
  if (impl.kind == YoungKind::ExpLinear) return YoungFunction::log_linear_tilde();

  Complement c{y, {}, {}, {}, {}};
  if (impl.kind == YoungKind::PsiAlpha || impl.kind == YoungKind::PsiEpsAlpha) {
    const PsiEpsAlpha psi = std::get<PsiEpsAlpha>(impl.v);
    c.curve = [psi](double w) { return std::pair{psi.t_of(w), psi.y_of(w)}; };
    c.s.push_back(1.0);
    for (double d = 1e-10;; d *= std::pow(10.0, 1.0 / 64.0)) {
      c.s.push_back(1.0 + d);
      if (!std::isfinite(psi.y_of(1.0 + d)) || d > 1e300) break;
    }
  } else {
    c.curve = [y](double u) { return std::pair{u, y.eval(u)}; };
    c.s.push_back(0.0);
    for (double u = 1e-12; u < 1e300; u *= std::pow(10.0, 1.0 / 64.0)) {
      c.s.push_back(u);
      if (!std::isfinite(y.eval(u))) break;
    }
  }
  const std::vector<std::pair<double, double>> pts = kernels::map<std::pair<double, double>>(
      c.s.size(), [&](std::size_t i) { return c.curve(c.s[i]); });
  // Drop the overflowing tail so that all table values are finite.
  while (pts.size() > c.u.size() && c.u.size() < c.s.size()) {
    const auto& [u, v] = pts[c.u.size()];
    if (!std::isfinite(u) || !std::isfinite(v)) break;
    c.u.push_back(u);
    c.y.push_back(v);
  }
  c.s.resize(c.u.size());
  if (c.u.size() < 3) throw ConvergenceError("complementary: base function overflows immediately");
  const std::string name = "Complement(" + impl.name + ")";
  return YoungFunction(make(YoungKind::NumericComplement, std::move(c), {}, name));
}

// ---------------------------------------------------------------------------
// Growth-condition probes

ProbeGrid ProbeGrid::between(double lo, double hi, int points) {
  if (!(lo > 0.0 && hi > lo) || points < 2) throw ParameterError("ProbeGrid: invalid range");
  return ProbeGrid{std::log(lo), std::log(hi), points};
}

std::vector<double> ProbeGrid::logs() const {
  std::vector<double> out(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) {
    out[static_cast<std::size_t>(i)] = log_lo + (log_hi - log_lo) * i / (points - 1);
  }
  return out;
}

ProbeResult probe_delta_prime(const YoungFunction& y, const ProbeGrid& grid) {
  const std::vector<double> s = grid.logs();
  const std::vector<double> ly =
      kernels::map<double>(s.size(), [&](std::size_t i) { return y.log_eval_at_log(s[i]); });
  ProbeResult result;
  double sup = -kInf;
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t j = 0; j < s.size(); ++j) {
      const double r = y.log_eval_at_log(s[i] + s[j]) - ly[i] - ly[j];
      if (!std::isfinite(r)) {
        ++result.skipped;
        continue;
      }
      sup = std::max(sup, r);
    }
  }
  if (std::isfinite(sup)) result.value = std::exp(sup);
  result.unbounded = sup > std::log(1e6);
  return result;
}

ProbeResult probe_nabla_prime(const YoungFunction& y, const ProbeGrid& grid) {
  const std::vector<double> s = grid.logs();
  const std::size_t n = s.size();
  const std::vector<double> ly =
      kernels::map<double>(n, [&](std::size_t i) { return y.log_eval_at_log(s[i]); });
  ProbeResult result;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (std::isnan(ly[i] + ly[j]) || ly[i] + ly[j] == kInf) ++result.skipped;
    }
  }
  const auto holds = [&](double log_c) {
    const double failures = kernels::sum(n, [&](std::size_t i) {
      double bad = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        const double rhs = ly[i] + ly[j];
        if (!std::isfinite(rhs)) continue;  // Y(u)Y(v) = 0, or unusable
        const double lhs = y.log_eval_at_log(log_c + s[i] + s[j]);
        if (lhs < rhs) bad += 1.0;
      }
      return bad;
    });
    return failures == 0.0;
  };
  if (holds(0.0)) {
    result.value = 1.0;
    return result;
  }
  double hi = std::log(1e6);
  if (!holds(hi)) return result;
  double lo = 0.0;
  for (int it = 0; it < 64; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (holds(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  result.value = std::exp(hi);
  return result;
}

bool essentially_greater(const YoungFunction& y1, const YoungFunction& y2,
                         std::span<const double> k_list, double log_u_max) {
  if (!(log_u_max >= std::log(1e3)) || !std::isfinite(log_u_max)) {
    throw ParameterError("essentially_greater: u_max must be >= 1e3");
  }
  constexpr int kPoints = 21;
  const double log_threshold = std::log(1e-6);
  for (double k : k_list) {
    if (!(k > 0.0) || !std::isfinite(k)) throw DomainError("essentially_greater: k must be > 0");
    double prev = kInf;
    for (int j = 0; j < kPoints; ++j) {
      const double s = log_u_max - std::log(10.0) * (kPoints - 1 - j) / (kPoints - 1);
      const double r = y1.log_eval_at_log(std::log(k) + s) - y2.log_eval_at_log(s);
      if (std::isnan(r) || r > prev) return false;
      prev = r;
    }
    if (!(prev < log_threshold)) return false;
  }
  return true;
}

double psi_log_log_at_log(double eps, double alpha, double log_t) {
  if (!(alpha > 2.0) || !(eps >= 1.0)) throw ParameterError("psi_log_log_at_log: bad parameters");
  const double gamma = (alpha - 2.0) / 2.0;
  const double log_w = log_pow_log_inverse_at_log(eps, log_t);
  const double log_a = log_w / eps;
  if (log_a < 700.0) {
    const double log_psi = YoungFunction::psi_eps_alpha(eps, alpha).log_eval_at_log(log_t);
    if (!(log_psi > 0.0)) throw DomainError("psi_log_log_at_log: requires Psi > 1");
    return std::log(log_psi);
  }
  // log Ψ = γ·a·(1 + c/a),  c = log w + log(2/α)/γ,  a = e^{log_a}
  const double c = log_w + std::log(2.0 / alpha) / gamma;
  return std::log(gamma) + log_a + std::log1p(c * std::exp(-log_a));
}

}  // namespace dnb
