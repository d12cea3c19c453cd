#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace dnb {

enum class YoungKind {
  PowerP,          ///< a·u^p (normalized: a = 1/p)
  ExpSquare,       ///< e^{u²} − 1
  ExpPow,          ///< e^{u^{2/ε}} − 1
  LogLinear,       ///< u·log(u + e)
  LogPow,          ///< u·log^ε(u + e)
  LogLinearTilde,  ///< (1 + u)·log(1 + u) − u
  ExpLinear,       ///< e^u − 1, complementary to LogLinearTilde
  PsiAlpha,        ///< PsiEpsAlpha with ε = 1
  PsiEpsAlpha,     ///< (2/α)·(w·(e^{w^{1/ε}} − e))^{(α−2)/2}, w = Φ_ε^{-1}(t); 0 while w ≤ 1
  NumericComplement,
  Custom,          ///< piecewise-linear table through (0, 0)
};

/// A Young function Y: [0, ∞) → [0, ∞). Immutable, cheap to copy, safe to
/// share between threads.
///
/// Every kind has a log-space twin `log_eval_at_log(s) = log Y(e^s)` that stays
/// finite long after Y itself overflows; all downstream constants that involve
/// exponential kinds are composed through it.
class YoungFunction {
 public:
  static YoungFunction power(double p);                  // u^p / p
  static YoungFunction power_scaled(double p, double a); // a·u^p
  static YoungFunction exp_square();
  static YoungFunction exp_pow(double eps);
  static YoungFunction log_linear();
  static YoungFunction log_pow(double eps);
  static YoungFunction log_linear_tilde();
  static YoungFunction exp_linear();
  static YoungFunction psi_alpha(double alpha);
  static YoungFunction psi_eps_alpha(double eps, double alpha);
  /// Table of (u, Y(u)) knots; (0, 0) is prepended when absent. Must be
  /// non-decreasing and convex; extended linearly past the last knot.
  static YoungFunction custom(std::vector<std::pair<double, double>> table);

  YoungKind kind() const;
  std::string name() const;

  /// Y(u); may return +inf on overflow. DomainError for negative / non-finite u.
  double eval(double u) const;
  /// log Y(u); -inf where Y(u) = 0.
  double log_eval(double u) const;
  /// log Y(e^{log_u}) for any finite log_u.
  double log_eval_at_log(double log_u) const;

  /// Smallest u with Y(u) = t (bracketed bisection, closed form where exact).
  double inverse(double t) const;
  /// log Y^{-1}(e^{log_t}); valid far outside double range of t itself.
  double log_inverse_at_log(double log_t) const;

  /// Registered Δ′ constant, when the kind carries one.
  std::optional<double> delta_prime_constant() const;
  std::optional<double> nabla_prime_constant() const;

  /// Parameters of the kind (p, ε, α ...), for reporting.
  double param(int i) const;

  struct Impl;

 private:
  explicit YoungFunction(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;

  friend YoungFunction complementary(const YoungFunction& y);
};

/// Y*(v) = sup_{u ≥ 0} (u·v − Y(u)). Closed forms for PowerP (p > 1) and the
/// LogLinearTilde / ExpLinear pair; otherwise a NumericComplement whose value
/// never exceeds the true conjugate.
YoungFunction complementary(const YoungFunction& y);

/// Log-uniform grid for the growth-condition probes, given in log coordinates
/// so that it can reach far beyond double range of u itself.
struct ProbeGrid {
  double log_lo;
  double log_hi;
  int points;

  static ProbeGrid between(double lo, double hi, int points);
  static ProbeGrid standard() { return between(1e-3, 1e3, 40); }
  std::vector<double> logs() const;
};

struct ProbeResult {
  std::optional<double> value;  ///< empirical constant, if one was found
  bool unbounded = false;       ///< sup exceeded 1e6 (Δ′ probe)
  std::size_t skipped = 0;      ///< grid points with non-finite ratios
};

/// sup over the grid of Y(uv) / (Y(u)·Y(v)).
ProbeResult probe_delta_prime(const YoungFunction& y, const ProbeGrid& grid);

/// Smallest C ∈ [1, 1e6] with Y(C·u·v) ≥ Y(u)·Y(v) on the grid (bisection in
/// log C); empty value when even C = 1e6 fails.
ProbeResult probe_nabla_prime(const YoungFunction& y, const ProbeGrid& grid);

/// Numerical probe of Y1 ≺ Y2: for each k the log ratio log Y1(k·u) − log Y2(u)
/// decreases across the top decade below u_max = e^{log_u_max} and ends below
/// log 1e-6.
bool essentially_greater(const YoungFunction& y1, const YoungFunction& y2,
                         std::span<const double> k_list, double log_u_max);

/// log log Ψ_ε(e^{log_t}) for the PsiEpsAlpha function, usable when log Ψ_ε
/// itself overflows. Requires Ψ_ε(e^{log_t}) > 1.
double psi_log_log_at_log(double eps, double alpha, double log_t);

}  // namespace dnb
