#include "dnb/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "dnb/error.hpp"
#include "dnb/fem.hpp"
#include "dnb/kernels.hpp"
#include "dnb/orlicz.hpp"

namespace dnb {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

struct MethodName {
  Method m;
  const char* name;
};
constexpr MethodName kMethods[] = {
    {Method::EsssupThm31, "EsssupThm31"},
    {Method::LpKqThm32, "LpKqThm32"},
    {Method::QuasidiscCor33, "QuasidiscCor33"},
    {Method::GaussianCor34, "GaussianCor34"},
    {Method::OrliczThm42, "OrliczThm42"},
    {Method::OrliczQuasidiscThm43, "OrliczQuasidiscThm43"},
};

void finish(BoundReport& r) {
  r.bound = std::exp(r.bound_log);
  if (!std::isfinite(r.bound_log)) r.raise(Flag::LogOverflow);
  if (r.bound == 0.0 || !std::isnormal(r.bound)) r.raise(Flag::BoundUnderflow);
}

// log Σ wᵢ·exp(terms[i])
double log_weighted_sum(std::span<const double> weights, const std::vector<double>& log_terms) {
  return kernels::log_sum_exp(log_terms.size(), [&](std::size_t i) {
    return std::log(weights[i]) + log_terms[i];
  });
}

}  // namespace

std::string to_string(Method m) {
  for (const auto& e : kMethods) {
    if (e.m == m) return e.name;
  }
  return "?";
}

std::optional<Method> method_from_string(std::string_view s) {
  for (const auto& e : kMethods) {
    if (s == e.name) return e.m;
  }
  return std::nullopt;
}

std::string to_string(Flag f) {
  switch (f) {
    case Flag::NuGeOne:
      return "NuGeOne";
    case Flag::LogOverflow:
      return "LogOverflow";
    case Flag::BEstimatedLower:
      return "BEstimatedLower";
    case Flag::DominationViolated:
      return "DominationViolated";
    case Flag::EsssupStall:
      return "EsssupStall";
    case Flag::BoundUnderflow:
      return "BoundUnderflow";
    case Flag::ConstantConventionConservative:
      return "ConstantConventionConservative";
    case Flag::ProofChainForm:
      return "ProofChainForm";
  }
  return "?";
}

bool is_validity_flag(Flag f) {
  switch (f) {
    case Flag::BoundUnderflow:
    case Flag::ConstantConventionConservative:
    case Flag::ProofChainForm:
      return false;
    default:
      return true;
  }
}

void BoundReport::set(const std::string& name, double value) {
  for (auto& [k, v] : intermediates) {
    if (k == name) {
      v = value;
      return;
    }
  }
  intermediates.emplace_back(name, value);
}

std::optional<double> BoundReport::get(std::string_view name) const {
  for (const auto& [k, v] : intermediates) {
    if (k == name) return v;
  }
  return std::nullopt;
}

double BoundReport::at(std::string_view name) const {
  const auto v = get(name);
  if (!v) throw ParameterError("report has no intermediate '" + std::string(name) + "'");
  return *v;
}

void BoundReport::raise(Flag f) {
  auto& list = is_validity_flag(f) ? flags : notes;
  if (std::find(list.begin(), list.end(), f) == list.end()) list.push_back(f);
}

bool BoundReport::has(Flag f) const {
  return std::find(flags.begin(), flags.end(), f) != flags.end() ||
         std::find(notes.begin(), notes.end(), f) != notes.end();
}

std::string BoundReport::flag_string() const {
  std::string out;
  for (const auto* list : {&flags, &notes}) {
    for (Flag f : *list) {
      if (!out.empty()) out += '|';
      out += to_string(f);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

double ScenarioParams::s_exponent() const {
  const double den = q * alpha - 2.0 * q - 2.0 * alpha;
  if (!(den > 0.0)) {
    throw ParameterError("density norm exponent undefined: need q*alpha - 2q - 2alpha > 0");
  }
  return q * (alpha - 2.0) / den;
}

namespace {

double alpha_ceiling(double K) {
  return K == 1.0 ? kInf : 2.0 * K * K / (K * K - 1.0);
}

void check_quasidisc(const std::string& tag, double alpha, double K) {
  if (!(K >= 1.0) || !std::isfinite(K)) throw ParameterError(tag + ": K must be >= 1");
  if (!(alpha > 2.0 && alpha < alpha_ceiling(K))) {
    std::ostringstream os;
    os << tag << " range violated: need 2 < alpha < 2K^2/(K^2-1) = " << alpha_ceiling(K)
       << " (alpha=" << alpha << ", K=" << K << ")";
    throw ParameterError(os.str());
  }
}

void check_kq(const std::string& tag, double p, double q) {
  if (!(p >= 1.0 && p < 2.0)) throw ParameterError(tag + " range violated: need 1 <= p < 2");
  const double q_max = 2.0 * p / (2.0 - p);
  if (!(q > 2.0 && q < q_max)) {
    std::ostringstream os;
    os << tag << " range violated: need 2 < q < 2p/(2-p) = " << q_max << " (q=" << q << ")";
    throw ParameterError(os.str());
  }
}

}  // namespace

void ScenarioParams::validate(Method m) const {
  const std::string tag = to_string(m);
  switch (m) {
    case Method::EsssupThm31:
      return;
    case Method::LpKqThm32:
      check_kq(tag, p, q);
      return;
    case Method::QuasidiscCor33:
    case Method::GaussianCor34: {
      check_kq(tag, p, q);
      check_quasidisc(tag, alpha, K);
      if (!(alpha > 2.0 * q / (q - 2.0))) {
        std::ostringstream os;
        os << tag << " range violated: need alpha > 2q/(q-2) = " << 2.0 * q / (q - 2.0);
        throw ParameterError(os.str());
      }
      (void)s_exponent();
      return;
    }
    case Method::OrliczThm42:
      if (!(eps > 1.0) || !std::isfinite(eps)) throw ParameterError(tag + ": need eps > 1");
      return;
    case Method::OrliczQuasidiscThm43:
      if (!(eps > 1.0) || !std::isfinite(eps)) throw ParameterError(tag + ": need eps > 1");
      check_quasidisc(tag, alpha, K);
      return;
  }
}

// ---------------------------------------------------------------------------

double b_qp_disk(double p, double q) {
  if (!(p >= 1.0) || !(q >= p) || !std::isfinite(q)) {
    throw ParameterError("b_qp_disk: need 1 <= p <= q < inf");
  }
  const double kappa = 1.0 / p - 1.0 / q;
  if (!(kappa >= 0.0 && kappa < 0.5)) {
    throw ParameterError("b_qp_disk: kappa = 1/p - 1/q must lie in [0, 1/2)");
  }
  return 2.0 / std::pow(kPi, kappa) * std::pow((1.0 - kappa) / (0.5 - kappa), 1.0 - kappa);
}

std::pair<double, double> mu_pq_disk_bracket(double p, double q) {
  const double lo = std::pow(b_qp_disk(p, q), -p);
  return {lo, std::pow(2.0, p) * lo};
}

// ---------------------------------------------------------------------------

double k_esssup(const ConformalMap& map, const DensityField& rho, const DiskQuadrature& quad) {
  const auto nodes = quad.nodes();
  const double log_k = kernels::max(nodes.size(), [&](std::size_t i) {
    return rho.log_at(map, nodes[i]) + std::log(map.jacobian(nodes[i]));
  });
  return std::exp(log_k);
}

EsssupEstimate k_esssup_refined(const ConformalMap& map, const DensityField& rho,
                                const DiskQuadrature& quad) {
  EsssupEstimate est;
  est.levels.push_back(k_esssup(map, rho, quad));
  for (int f : {2, 4}) {
    const DiskQuadrature fine =
        build_disk_quadrature(quad.radial_order() * f, quad.angular_order() * f);
    est.levels.push_back(k_esssup(map, rho, fine));
  }
  est.value = *std::max_element(est.levels.begin(), est.levels.end());
  const double d1 = est.levels[1] - est.levels[0];
  const double d2 = est.levels[2] - est.levels[1];
  est.aitken = (d2 != d1) ? est.levels[2] - d2 * d2 / (d2 - d1) : est.levels[2];
  est.stalled = std::abs(d2) > 1e-9 * std::abs(est.levels[2]) && std::abs(d2) > 0.5 * std::abs(d1);
  return est;
}

BoundReport mu_lower_esssup(const ConformalMap& map, const DensityField& rho,
                            const DiskQuadrature& quad) {
  const EsssupEstimate est = k_esssup_refined(map, rho, quad);
  const double mu_disk = mu_disk_reference();
  BoundReport r;
  r.method = Method::EsssupThm31;
  r.bound_log = std::log(mu_disk) - std::log(est.value);
  r.set("mu_disk", mu_disk);
  r.set("K_esssup", est.value);
  r.set("K_esssup_l0", est.levels[0]);
  r.set("K_esssup_l1", est.levels[1]);
  r.set("K_esssup_l2", est.levels[2]);
  r.set("K_esssup_aitken", est.aitken);
  if (est.stalled) r.raise(Flag::EsssupStall);
  finish(r);
  return r;
}

double log_k_q(const ConformalMap& map, const DensityField& rho, double q,
               const DiskQuadrature& quad) {
  if (!(q > 2.0) || !std::isfinite(q)) throw ParameterError("k_q: need q > 2");
  const PullbackSamples s = pullback_density(rho, map, quad);
  const double e = q / (q - 2.0);
  std::vector<double> terms(s.log_rho.size());
  for (std::size_t i = 0; i < terms.size(); ++i) terms[i] = e * (s.log_rho[i] + s.log_jac[i]);
  return log_weighted_sum(quad.weights(), terms) / e;
}

double k_q(const ConformalMap& map, const DensityField& rho, double q, const DiskQuadrature& quad) {
  return std::exp(log_k_q(map, rho, q, quad));
}

BoundReport mu_lower_kq(const ConformalMap& map, const DensityField& rho, double p, double q,
                        const DiskQuadrature& quad) {
  check_kq(to_string(Method::LpKqThm32), p, q);
  const double b = b_qp_disk(p, q);
  const auto [lo, hi] = mu_pq_disk_bracket(p, q);
  const double log_kq = log_k_q(map, rho, q, quad);
  const double log_pi_term = 2.0 * (2.0 - p) / p * std::log(kPi);
  const double statement_log = std::log(lo) - 2.0 * p * std::log(2.0) - log_pi_term - log_kq;
  const double chain_log = -log_pi_term - 2.0 * std::log(b) - log_kq;

  BoundReport r;
  r.method = Method::LpKqThm32;
  r.bound_log = std::min(chain_log, statement_log);
  r.set("K_q", std::exp(log_kq));
  r.set("log_K_q", log_kq);
  r.set("B_qp", b);
  r.set("mu_pq_lo", lo);
  r.set("mu_pq_hi", hi);
  r.set("bound_chain", std::exp(chain_log));
  r.set("bound_chain_log", chain_log);
  r.set("bound_statement", std::exp(statement_log));
  r.set("bound_statement_log", statement_log);
  if (chain_log < statement_log) r.raise(Flag::ProofChainForm);
  finish(r);
  return r;
}

double k_phi(const ConformalMap& map, const DensityField& rho, const YoungFunction& phi,
             const DiskQuadrature& quad) {
  if (phi.kind() != YoungKind::LogLinear && phi.kind() != YoungKind::LogPow) {
    throw ParameterError("k_phi: Phi must be LogLinear or LogPow");
  }
  const PullbackSamples s = pullback_density(rho, map, quad);
  std::vector<double> g(s.log_rho.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    // ρJ / Φ^{-1}(J)
    g[i] = std::exp(s.log_rho[i] + s.log_jac[i] - phi.log_inverse_at_log(s.log_jac[i]));
  }
  return luxemburg_norm(SampledFunction(pullback_measure(map, quad), std::move(g)), phi);
}

BoundReport mu_lower_orlicz(const ConformalMap& map, const DensityField& rho, double eps,
                            double b_m_eps, const DiskQuadrature& quad, bool b_estimated) {
  if (!(eps > 1.0) || !std::isfinite(eps)) throw ParameterError("OrliczThm42: need eps > 1");
  if (!(b_m_eps > 0.0) || !std::isfinite(b_m_eps)) {
    throw ParameterError("OrliczThm42: B_M_eps must be positive");
  }
  const double kphi = k_phi(map, rho, YoungFunction::log_pow(eps), quad);
  BoundReport r;
  r.method = Method::OrliczThm42;
  r.bound_log = -std::log(18.0) - 2.0 * std::log(b_m_eps) - std::log(kphi);
  r.set("K_Phi", kphi);
  r.set("K_Phi_orlicz_hi", 2.0 * kphi);
  r.set("B_M_eps", b_m_eps);
  r.set("bound_12", 1.0 / (12.0 * b_m_eps * b_m_eps * kphi));
  r.set("B_rho_3sqrt2", 3.0 * std::sqrt(2.0) * b_m_eps * std::sqrt(kphi));
  r.set("B_rho_2sqrt3", 2.0 * std::sqrt(3.0) * b_m_eps * std::sqrt(kphi));
  r.raise(Flag::ConstantConventionConservative);
  if (b_estimated) r.raise(Flag::BEstimatedLower);
  finish(r);
  return r;
}

// ---------------------------------------------------------------------------

LogCJ log_c_j(double alpha, double K, double area) {
  check_quasidisc("C_J", alpha, K);
  if (!(area > 0.0) || !std::isfinite(area)) throw ParameterError("C_J: area must be positive");
  LogCJ c;
  c.log_nu = 4.0 * alpha * std::log(10.0) + std::log((alpha - 2.0) / (alpha - 1.0)) +
             alpha * std::log(24.0 * kPi * kPi * K * K);
  c.nu_ge_one = c.log_nu >= 0.0;
  double log_abs_one_minus_nu;
  if (c.log_nu > 0.0) {
    log_abs_one_minus_nu = c.log_nu + std::log1p(-std::exp(-c.log_nu));
  } else {
    log_abs_one_minus_nu = std::log1p(-std::exp(c.log_nu));
  }
  if (!std::isfinite(log_abs_one_minus_nu)) throw ParameterError("C_J: nu = 1 exactly");
  c.log_c_alpha = 6.0 * std::log(10.0) - (std::log(alpha - 1.0) + log_abs_one_minus_nu) / alpha;
  const double pi4 = kPi * kPi * kPi * kPi;
  c.exp_term = K * K * kPi * kPi * (2.0 + pi4) * (2.0 + pi4) / (2.0 * std::log(3.0));
  c.log_area = std::log(area);
  c.log_value = recompose_log_c_j(c, alpha, K);
  return c;
}

double recompose_log_c_j(const LogCJ& c, double alpha, double K) {
  return 2.0 * c.log_c_alpha + 2.0 * std::log(K) + (2.0 / alpha - 1.0) * std::log(kPi) -
         std::log(4.0) + c.exp_term + c.log_area;
}

double log_density_norm(const ConformalMap& map, const DensityField& rho, double s,
                        const DiskQuadrature& quad) {
  if (!(s > 0.0) || !std::isfinite(s)) throw ParameterError("density norm: exponent must be > 0");
  const PullbackSamples p = pullback_density(rho, map, quad);
  std::vector<double> terms(p.log_rho.size());
  for (std::size_t i = 0; i < terms.size(); ++i) terms[i] = s * p.log_rho[i] + p.log_jac[i];
  return log_weighted_sum(quad.weights(), terms) / s;
}

double domain_area(const ConformalMap& map, const DiskQuadrature& quad) {
  if (const auto a = map.closed_form_area()) return *a;
  return image_area(map, quad);
}

namespace {

BoundReport quasidisc_report(Method method, const LogCJ& cj, double log_rho_norm,
                             const ScenarioParams& prm) {
  const double p = prm.p;
  const double q = prm.q;
  const double kappa = prm.kappa();
  const double c_pi = 2.0 * (p - 2.0) / p - 2.0 * kappa;
  const double c_ratio = (2.0 - 2.0 * kappa) * std::log((1.0 - kappa) / (0.5 - kappa));
  const double c_cj = 2.0 * prm.alpha / (q * (prm.alpha - 2.0));
  const double base = -std::log(4.0) - c_pi * std::log(kPi) - c_ratio - c_cj * cj.log_value;
  BoundReport r;
  r.method = method;
  // The Hölder step gives ‖ρ‖_s to the first power; the printed display
  // carries ‖ρ‖_s^{(q−2)/q} and is kept alongside.
  r.bound_log = base - log_rho_norm;
  const double statement_log = base - (q - 2.0) / q * log_rho_norm;
  r.set("s", prm.s_exponent());
  r.set("bound_statement", std::exp(statement_log));
  r.set("bound_statement_log", statement_log);
  r.set("log_rho_norm", log_rho_norm);
  r.set("log_C_J", cj.log_value);
  r.set("log_C_alpha", cj.log_c_alpha);
  r.set("log_nu", cj.log_nu);
  r.set("C_J_exp_term", cj.exp_term);
  r.set("log_area", cj.log_area);
  if (cj.nu_ge_one) r.raise(Flag::NuGeOne);
  r.raise(Flag::ProofChainForm);
  finish(r);
  return r;
}

double ls_slope(std::span<const double> x, std::span<const double> y) {
  const std::size_t m = x.size();
  if (m < 2) return 0.0;
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= m;
  my /= m;
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  return sxx > 0.0 ? sxy / sxx : 0.0;
}

}  // namespace

BoundReport mu_lower_quasidisc(const ConformalMap& map, const DensityField& rho,
                               const ScenarioParams& params, const DiskQuadrature& quad) {
  params.validate(Method::QuasidiscCor33);
  const LogCJ cj = log_c_j(params.alpha, params.K, domain_area(map, quad));
  const double log_norm = log_density_norm(map, rho, params.s_exponent(), quad);
  return quasidisc_report(Method::QuasidiscCor33, cj, log_norm, params);
}

DiskQuadrature peaked_quadrature(int n_theta) {
  return build_graded_disk_quadrature(16, n_theta, 28, 1e-10);
}

GaussianSweep gaussian_sweep(const ConformalMap& map, std::span<const double> n_list,
                             const ScenarioParams& params, const DiskQuadrature& quad) {
  params.validate(Method::GaussianCor34);
  if (n_list.empty()) throw ParameterError("gaussian_sweep: empty n list");
  const double s = params.s_exponent();
  const LogCJ cj = log_c_j(params.alpha, params.K, domain_area(map, quad));
  GaussianSweep sweep;
  sweep.predicted_slope = (params.q - 2.0) / (params.q * s);
  sweep.predicted_chain_slope = 1.0 / s;
  for (double n : n_list) {
    if (!(n >= 1.0) || !std::isfinite(n)) throw ParameterError("gaussian_sweep: n must be >= 1");
    const double log_norm = log_density_norm(map, DensityField::gaussian(n), s, quad);
    const double log_analytic = std::log(kPi / (n * s)) / s;
    BoundReport r = quasidisc_report(Method::GaussianCor34, cj, log_norm, params);
    r.set("n", n);
    r.set("log_rho_norm_analytic", log_analytic);
    // Relative slack 1e-12 on the norm itself.
    if (log_norm > log_analytic + 1e-12) r.raise(Flag::DominationViolated);
    sweep.n.push_back(n);
    sweep.reports.push_back(std::move(r));
  }
  std::vector<double> log_n;
  std::vector<double> statement;
  std::vector<double> chain;
  for (std::size_t i = 0; i < sweep.n.size(); ++i) {
    log_n.push_back(std::log(sweep.n[i]));
    statement.push_back(sweep.reports[i].at("bound_statement_log"));
    chain.push_back(sweep.reports[i].bound_log);
  }
  sweep.slope = ls_slope(log_n, statement);
  sweep.chain_slope = ls_slope(log_n, chain);
  return sweep;
}

// ---------------------------------------------------------------------------

double log_log_c_tilde_from(double log_log_psi, double log_c_psi) {
  // log C̃ = log 288 + log C_Ψ + log Ψ  (Φ^{-1}(t) = t to double precision here)
  return log_log_psi + std::log1p((std::log(288.0) + log_c_psi) * std::exp(-log_log_psi));
}

BoundReport mu_lower_orlicz_quasidisc(const ConformalMap& map, const DensityField& rho,
                                      const ScenarioParams& params, double b_m_eps,
                                      const DiskQuadrature& quad, bool b_estimated) {
  params.validate(Method::OrliczQuasidiscThm43);
  if (!(b_m_eps > 0.0) || !std::isfinite(b_m_eps)) {
    throw ParameterError("OrliczQuasidiscThm43: B_M_eps must be positive");
  }
  const double alpha = params.alpha;
  const double eps = params.eps;
  const LogCJ cj = log_c_j(alpha, params.K, domain_area(map, quad));

  const YoungFunction phi = YoungFunction::log_pow(eps);
  const YoungFunction psi = YoungFunction::psi_eps_alpha(eps, alpha);
  const ProbeResult probe = probe_nabla_prime(psi, ProbeGrid::standard());
  if (!probe.value) {
    throw ConvergenceError("OrliczQuasidiscThm43: no nabla' constant for " + psi.name() +
                           " on the standard probe grid");
  }
  const double log_c_psi = std::log(*probe.value);

  // N = ‖Φ_ε(ρ)‖ in L^{Ψ*}(Ω), pulled back to the disk.
  const PullbackSamples s = pullback_density(rho, map, quad);
  std::vector<double> phi_rho(s.log_rho.size());
  for (std::size_t i = 0; i < phi_rho.size(); ++i) {
    phi_rho[i] = std::exp(phi.log_eval_at_log(s.log_rho[i]));
  }
  const double norm =
      luxemburg_norm(SampledFunction(pullback_measure(map, quad), std::move(phi_rho)),
                     complementary(psi));
  const double log_phi_inv_norm = phi.log_inverse_at_log(-std::log(norm));

  const double log_x = 0.5 * (alpha - 2.0) * std::log(alpha / (alpha - 2.0)) +
                       0.5 * alpha * cj.log_value;
  const double log_log_psi = psi_log_log_at_log(eps, alpha, log_x);

  BoundReport r;
  r.method = Method::OrliczQuasidiscThm43;
  double log_c_tilde;
  double log_log_c_tilde;
  if (log_log_psi < std::log(700.0)) {
    const double log_psi = std::exp(log_log_psi);
    log_c_tilde = std::log(288.0) + log_c_psi - phi.log_inverse_at_log(-log_psi);
    log_log_c_tilde = std::log(log_c_tilde);
  } else {
    log_log_c_tilde = log_log_c_tilde_from(log_log_psi, log_c_psi);
    log_c_tilde = std::exp(log_log_c_tilde);
  }
  r.bound_log = log_phi_inv_norm - log_c_tilde - 2.0 * std::log(b_m_eps);
  // log(−bound_log), kept finite when bound_log itself is −inf.
  const double log_neg_bound_log =
      log_log_c_tilde +
      std::log1p((2.0 * std::log(b_m_eps) - log_phi_inv_norm) * std::exp(-log_log_c_tilde));

  r.set("log_C_J", cj.log_value);
  r.set("log_C_alpha", cj.log_c_alpha);
  r.set("log_nu", cj.log_nu);
  r.set("C_J_exp_term", cj.exp_term);
  r.set("log_area", cj.log_area);
  r.set("C_Psi", *probe.value);
  r.set("Psi_star_norm", norm);
  r.set("log_Phi_inv_norm", log_phi_inv_norm);
  r.set("log_X", log_x);
  r.set("log_log_Psi_X", log_log_psi);
  r.set("log_C_tilde_J", log_c_tilde);
  r.set("log_log_C_tilde_J", log_log_c_tilde);
  r.set("log_neg_bound_log", log_neg_bound_log);
  r.set("B_M_eps", b_m_eps);
  if (cj.nu_ge_one) r.raise(Flag::NuGeOne);
  if (b_estimated) r.raise(Flag::BEstimatedLower);
  finish(r);
  return r;
}

}  // namespace dnb
