#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dnb/conformal.hpp"
#include "dnb/density.hpp"
#include "dnb/quadrature.hpp"
#include "dnb/young.hpp"

namespace dnb {

enum class Method {
  EsssupThm31,
  LpKqThm32,
  QuasidiscCor33,
  GaussianCor34,
  OrliczThm42,
  OrliczQuasidiscThm43,
};

std::string to_string(Method m);
std::optional<Method> method_from_string(std::string_view s);

enum class Flag {
  // validity: a report carrying any of these is excluded from soundness checks
  NuGeOne,             ///< ν ≥ 1 in C_α; |1 − ν| substituted
  LogOverflow,         ///< a log-space constant exceeded double range
  BEstimatedLower,     ///< B_{M,2} came from the trial-function lower estimate
  DominationViolated,  ///< quadrature norm above its analytic domination
  EsssupStall,         ///< grid maximum did not settle under refinement
  // informational
  BoundUnderflow,                  ///< bound = exp(bound_log) underflows to 0
  ConstantConventionConservative,  ///< 18 = (3√2)² used in place of 12 = (2√3)²
  ProofChainForm,                  ///< bound is the proof-chain form; the printed display is bound_statement
};

std::string to_string(Flag f);
bool is_validity_flag(Flag f);

struct BoundReport {
  Method method = Method::EsssupThm31;
  double bound_log = 0.0;  ///< natural log of the μ_ρ lower bound
  double bound = 0.0;      ///< exp(bound_log); may underflow to 0
  std::vector<std::pair<std::string, double>> intermediates;
  std::vector<Flag> flags;  ///< validity flags
  std::vector<Flag> notes;  ///< informational flags

  void set(const std::string& name, double value);
  std::optional<double> get(std::string_view name) const;
  /// Value of a recorded intermediate; ParameterError when absent.
  double at(std::string_view name) const;
  void raise(Flag f);
  bool has(Flag f) const;
  bool valid() const { return flags.empty(); }
  /// Every flag and note, '|'-separated, validity flags first.
  std::string flag_string() const;
};

struct ScenarioParams {
  double p = 1.5;
  double q = 4.0;
  double alpha = 12.0;
  double K = 1.0;
  double eps = 2.0;

  double kappa() const { return 1.0 / p - 1.0 / q; }
  /// Exponent s = q(α−2)/(qα − 2q − 2α) of the density norm.
  double s_exponent() const;
  /// Range checks for the given method; ParameterError naming the range.
  void validate(Method m) const;
};

// ---------------------------------------------------------------------------
// Disk Poincaré constants

/// 2/π^κ · ((1−κ)/(1/2−κ))^{1−κ}, κ = 1/p − 1/q ∈ [0, 1/2).
double b_qp_disk(double p, double q);
/// (B^{−p}, 2^p B^{−p}).
std::pair<double, double> mu_pq_disk_bracket(double p, double q);

// ---------------------------------------------------------------------------
// Mapping-dependent bounds

/// max over nodes of ρ(φ(y))·J_φ(y).
double k_esssup(const ConformalMap& map, const DensityField& rho, const DiskQuadrature& quad);

struct EsssupEstimate {
  std::vector<double> levels;  ///< grid maxima on quad, 2×, 4× refinements
  double value = 0.0;          ///< max over the levels
  double aitken = 0.0;         ///< Aitken extrapolation of the level sequence
  bool stalled = false;
};

EsssupEstimate k_esssup_refined(const ConformalMap& map, const DensityField& rho,
                                const DiskQuadrature& quad);

/// μ(𝔻)/K(Ω, ρ) with μ(𝔻) from the Bessel reference.
BoundReport mu_lower_esssup(const ConformalMap& map, const DensityField& rho,
                            const DiskQuadrature& quad);

/// (Σ w (ρJ)^{q/(q−2)})^{(q−2)/q}.
double k_q(const ConformalMap& map, const DensityField& rho, double q, const DiskQuadrature& quad);
double log_k_q(const ConformalMap& map, const DensityField& rho, double q,
               const DiskQuadrature& quad);

/// Smaller of the proof-chain form 1/(π^{2(2−p)/p} B² K_q) and the stated
/// form μ_lo/(2^{2p} π^{2(2−p)/p} K_q); both are recorded.
BoundReport mu_lower_kq(const ConformalMap& map, const DensityField& rho, double p, double q,
                        const DiskQuadrature& quad);

/// ‖ρ/(J_{φ⁻¹} Φ^{-1}(1/J_{φ⁻¹}))‖_{L^Φ(Ω)} by pullback.
double k_phi(const ConformalMap& map, const DensityField& rho, const YoungFunction& phi,
             const DiskQuadrature& quad);

/// 1/(18 B² K_{Φ_ε}); b_estimated marks B as a lower estimate.
BoundReport mu_lower_orlicz(const ConformalMap& map, const DensityField& rho, double eps,
                            double b_m_eps, const DiskQuadrature& quad, bool b_estimated = false);

// ---------------------------------------------------------------------------
// Quasidisc (mapping-free) bounds

struct LogCJ {
  double log_value = 0.0;
  double log_c_alpha = 0.0;
  double log_nu = 0.0;
  double exp_term = 0.0;  ///< K²π²(2+π⁴)²/(2 log 3)
  double log_area = 0.0;
  bool nu_ge_one = false;
};

LogCJ log_c_j(double alpha, double K, double area);
/// Term-by-term recomposition of log C_J from the logged pieces.
double recompose_log_c_j(const LogCJ& c, double alpha, double K);

/// log ‖ρ‖_{L^s(Ω)} by pullback quadrature.
double log_density_norm(const ConformalMap& map, const DensityField& rho, double s,
                        const DiskQuadrature& quad);

/// Area used inside C_J: the closed form where known, quadrature otherwise.
double domain_area(const ConformalMap& map, const DiskQuadrature& quad);

BoundReport mu_lower_quasidisc(const ConformalMap& map, const DensityField& rho,
                               const ScenarioParams& params, const DiskQuadrature& quad);

struct GaussianSweep {
  std::vector<double> n;
  std::vector<BoundReport> reports;
  double slope = 0.0;            ///< least-squares slope of the printed display's log against log n
  double predicted_slope = 0.0;  ///< (q−2)/(q s)
  double chain_slope = 0.0;      ///< same for bound_log (‖ρ‖_s to the first power)
  double predicted_chain_slope = 0.0;  ///< 1/s
};

GaussianSweep gaussian_sweep(const ConformalMap& map, std::span<const double> n_list,
                             const ScenarioParams& params, const DiskQuadrature& quad);

/// Graded rule that resolves e^{−n|x|²} up to n ≈ 1e5.
DiskQuadrature peaked_quadrature(int n_theta = 64);

/// loglog C̃_J from loglog Ψ and log C_Ψ.
double log_log_c_tilde_from(double log_log_psi, double log_c_psi);

BoundReport mu_lower_orlicz_quasidisc(const ConformalMap& map, const DensityField& rho,
                                      const ScenarioParams& params, double b_m_eps,
                                      const DiskQuadrature& quad, bool b_estimated = false);

}  // namespace dnb
