#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "dnb/cli.hpp"
#include "dnb/error.hpp"
#include "dnb/fem.hpp"
#include "dnb/kernels.hpp"
#include "dnb/orlicz.hpp"

namespace dnb::cli {

namespace {

std::string num(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string sanitize(std::string s) {
  for (char& c : s) {
    if (c == ',' || c == '\n' || c == ';') c = ' ';
  }
  return s;
}

std::string join_intermediates(const BoundReport& r) {
  std::string out;
  for (const auto& [k, v] : r.intermediates) {
    if (!out.empty()) out += ';';
    out += k + "=" + num(v);
  }
  return out;
}

using Row = std::vector<std::string>;

struct ScenarioOutput {
  std::vector<Row> rows;
  bool unsound = false;
};

struct Context {
  const Options& opt;
  const Scenario& sc;
  DiskQuadrature quad;
  std::optional<double> mu_fem;
  std::optional<double> b_estimate;

  Context(const Options& o, const Scenario& s)
      : opt(o), sc(s), quad(build_disk_quadrature(s.quad_r, s.quad_theta)) {}

  double fem() {
    if (!mu_fem) {
      const int level = sc.fem_level.value_or(opt.fem_level);
      mu_fem = fem_eigenvalue(sc.map, sc.density, level, 2).extrapolated;
    }
    return *mu_fem;
  }

  std::pair<double, bool> b_m_eps() {
    if (sc.b_m_eps) return {*sc.b_m_eps, false};
    if (!b_estimate) {
      b_estimate = b_m2_disk_estimate(8, YoungFunction::exp_pow(sc.params.eps));
    }
    return {*b_estimate, true};
  }
};

void corrupt(BoundReport& r, double factor) {
  if (factor == 1.0) return;
  r.bound_log += std::log(factor);
  r.bound = std::exp(r.bound_log);
  r.set("corrupt_factor", factor);
}

std::vector<BoundReport> compute(Context& ctx, Method m) {
  const Scenario& sc = ctx.sc;
  switch (m) {
    case Method::EsssupThm31:
      return {mu_lower_esssup(sc.map, sc.density, ctx.quad)};
    case Method::LpKqThm32:
      return {mu_lower_kq(sc.map, sc.density, sc.params.p, sc.params.q, ctx.quad)};
    case Method::QuasidiscCor33:
      return {mu_lower_quasidisc(sc.map, sc.density, sc.params, ctx.quad)};
    case Method::GaussianCor34: {
      GaussianSweep sw =
          gaussian_sweep(sc.map, sc.gaussian_n, sc.params, peaked_quadrature(sc.quad_theta));
      for (auto& r : sw.reports) {
        r.set("slope", sw.slope);
        r.set("predicted_slope", sw.predicted_slope);
        r.set("chain_slope", sw.chain_slope);
        r.set("predicted_chain_slope", sw.predicted_chain_slope);
      }
      return sw.reports;
    }
    case Method::OrliczThm42: {
      const auto [b, est] = ctx.b_m_eps();
      return {mu_lower_orlicz(sc.map, sc.density, sc.params.eps, b, ctx.quad, est)};
    }
    case Method::OrliczQuasidiscThm43: {
      const auto [b, est] = ctx.b_m_eps();
      return {mu_lower_orlicz_quasidisc(sc.map, sc.density, sc.params, b, ctx.quad, est)};
    }
  }
  return {};
}

ScenarioOutput run_bounds(const Options& opt, const Scenario& sc, bool verify) {
  ScenarioOutput out;
  Context ctx(opt, sc);
  double mu = NAN;
  std::string fem_error;
  if (verify) {
    try {
      mu = ctx.fem();
    } catch (const Error& e) {
      fem_error = sanitize(e.what());
    }
  }
  for (Method m : sc.methods) {
    std::vector<BoundReport> reports;
    std::string error;
    try {
      reports = compute(ctx, m);
    } catch (const ParameterError&) {
      throw;
    } catch (const Error& e) {
      error = sanitize(e.what());
    }
    if (!error.empty()) {
      Row row{sc.id, to_string(m), "nan", "nan"};
      if (verify) row.insert(row.end(), {num(mu), "nan", "error"});
      row.insert(row.end(), {"error=" + error, "NumericError"});
      out.rows.push_back(std::move(row));
      continue;
    }
    for (auto& r : reports) {
      corrupt(r, sc.corrupt_factor);
      Row row{sc.id, to_string(m), num(r.bound), num(r.bound_log)};
      if (verify) {
        const double ratio = r.bound / mu;
        std::string sound;
        if (!fem_error.empty()) {
          sound = "error";
        } else if (!r.valid()) {
          sound = "skip";
        } else if (ratio <= 1.0 + opt.tol) {
          sound = "true";
        } else {
          sound = "false";
          out.unsound = true;
        }
        row.insert(row.end(), {num(mu), num(ratio), sound});
      }
      std::string inter = join_intermediates(r);
      if (!fem_error.empty()) inter += (inter.empty() ? "" : ";") + std::string("fem_error=") + fem_error;
      row.insert(row.end(), {inter, r.flag_string()});
      out.rows.push_back(std::move(row));
    }
  }
  return out;
}

ScenarioOutput run_sweep(const Options&, const Scenario& sc) {
  ScenarioOutput out;
  if (sc.gaussian_n.empty()) return out;
  const GaussianSweep sw =
      gaussian_sweep(sc.map, sc.gaussian_n, sc.params, peaked_quadrature(sc.quad_theta));
  for (std::size_t i = 0; i < sw.reports.size(); ++i) {
    const BoundReport& r = sw.reports[i];
    out.rows.push_back({sc.id, num(sw.n[i]), num(r.bound), num(r.bound_log),
                        num(r.at("bound_statement_log")), num(r.at("log_rho_norm")), num(r.at("log_rho_norm_analytic")),
                        r.flag_string()});
  }
  out.rows.push_back({sc.id, "slope", num(sw.slope), num(sw.predicted_slope), "", "", "", ""});
  out.rows.push_back(
      {sc.id, "chain_slope", num(sw.chain_slope), num(sw.predicted_chain_slope), "", "", "", ""});
  return out;
}

ScenarioOutput run_norms(const Options&, const Scenario& sc) {
  ScenarioOutput out;
  const DiskQuadrature quad = build_disk_quadrature(sc.quad_r, sc.quad_theta);
  for (const auto& req : sc.norms) {
    double value;
    if (req == "kq") {
      value = k_q(sc.map, sc.density, sc.params.q, quad);
    } else if (req == "kphi" || req.starts_with("kphi:")) {
      const YoungFunction phi =
          req == "kphi" ? YoungFunction::log_pow(sc.params.eps) : parse_young(req.substr(5));
      value = k_phi(sc.map, sc.density, phi, quad);
    } else {
      // Luxemburg norm of ρ on Ω
      const YoungFunction y = parse_young(req.substr(10));
      const PullbackSamples s = pullback_density(sc.density, sc.map, quad);
      value = luxemburg_norm(
          SampledFunction(pullback_measure(sc.map, quad),
                          std::vector<double>(s.rho.values().begin(), s.rho.values().end())),
          y);
    }
    out.rows.push_back({sc.id, req, num(value)});
  }
  return out;
}

void write_row(std::ostream& os, const Row& row) {
  for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << row[i];
  os << '\n';
}

}  // namespace

int run(const Options& opt, std::ostream& out, std::ostream& err) {
  const std::string& cmd = opt.command;
  if (cmd != "bound" && cmd != "verify" && cmd != "sweep" && cmd != "norms") {
    err << "error: unknown command '" << cmd << "' (expected bound, verify, sweep, norms)\n";
    return 2;
  }
  if (opt.jobs < 1 || opt.fem_level < 2 || opt.fem_level > 8 || !(opt.tol >= 0.0)) {
    err << "error: --jobs must be >= 1, --fem-level in [2, 8], --tol >= 0\n";
    return 2;
  }
  Config cfg;
  try {
    cfg = load_config(opt.config_path);
    for (const auto& sc : cfg.scenarios) {
      const std::string where =
          opt.config_path + ":" + std::to_string(sc.line) + ": scenario '" + sc.id + "': ";
      if ((cmd == "bound" || cmd == "verify") && sc.methods.empty()) {
        throw ConfigError(where + "empty method list");
      }
      if (cmd == "norms" && sc.norms.empty()) throw ConfigError(where + "empty norms list");
      if (cmd == "sweep") sc.params.validate(Method::GaussianCor34);
    }
    if (cmd == "sweep") {
      bool any = false;
      for (const auto& sc : cfg.scenarios) any = any || !sc.gaussian_n.empty();
      if (!any) throw ConfigError(opt.config_path + ": no scenario defines gaussian_n");
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  const std::size_t n = cfg.scenarios.size();
  std::vector<ScenarioOutput> results(n);
  std::vector<std::string> errors(n);
  std::vector<int> codes(n, 0);
#pragma omp parallel for schedule(dynamic) num_threads(opt.jobs)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i) {
    const auto k = static_cast<std::size_t>(i);
    const Scenario& sc = cfg.scenarios[k];
    try {
      if (cmd == "bound") results[k] = run_bounds(opt, sc, false);
      if (cmd == "verify") results[k] = run_bounds(opt, sc, true);
      if (cmd == "sweep") results[k] = run_sweep(opt, sc);
      if (cmd == "norms") results[k] = run_norms(opt, sc);
    } catch (const ParameterError& e) {
      errors[k] = opt.config_path + ":" + std::to_string(sc.line) + ": scenario '" + sc.id +
                  "': " + e.what();
      codes[k] = 2;
    } catch (const std::exception& e) {
      errors[k] = "scenario '" + sc.id + "': " + e.what();
      codes[k] = 2;
    }
  }
  for (std::size_t k = 0; k < n; ++k) {
    if (codes[k] != 0) {
      err << "error: " << errors[k] << "\n";
      return codes[k];
    }
  }

  std::ofstream file;
  std::ostream* os = &out;
  if (!opt.out_path.empty()) {
    file.open(opt.out_path);
    if (!file) {
      err << "error: cannot write " << opt.out_path << "\n";
      return 2;
    }
    os = &file;
  }
  char hash[32];
  std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(cfg.hash));
  *os << "# dnb " << kVersion << "\n";
  *os << "# command=" << cmd << " config_fnv1a=" << hash;
  if (cmd == "verify") *os << " tol=" << num(opt.tol) << " fem_level=" << opt.fem_level;
  *os << "\n";
  if (cmd == "bound") *os << "scenario,method,bound,bound_log,intermediates,flags\n";
  if (cmd == "verify") {
    *os << "scenario,method,bound,bound_log,mu_fem,ratio,sound,intermediates,flags\n";
  }
  if (cmd == "sweep") *os << "scenario,n,bound,bound_log,bound_statement_log,log_rho_norm,log_rho_norm_analytic,flags\n";
  if (cmd == "norms") *os << "scenario,quantity,value\n";
  bool unsound = false;
  for (const auto& r : results) {
    for (const auto& row : r.rows) write_row(*os, row);
    unsound = unsound || r.unsound;
  }
  os->flush();
  return unsound ? 1 : 0;
}

}  // namespace dnb::cli
