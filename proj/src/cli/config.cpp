#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "dnb/cli.hpp"
#include "dnb/error.hpp"

namespace dnb::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, const std::string& seps) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (seps.find(c) != std::string::npos) {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

double to_double(const std::string& s) {
  double v = 0.0;
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end || !std::isfinite(v)) {
    throw ConfigError("'" + s + "' is not a finite number");
  }
  return v;
}

int to_int(const std::string& s) {
  int v = 0;
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end) throw ConfigError("'" + s + "' is not an integer");
  return v;
}

// "kind a=1 b=2" → kind, {a: "1", b: "2"}; bare tokens go to positional.
struct Spec {
  std::string kind;
  std::map<std::string, std::string> named;
  std::vector<std::string> positional;

  double num(const std::string& key, double fallback) const {
    const auto it = named.find(key);
    return it == named.end() ? fallback : to_double(it->second);
  }
};

Spec parse_spec(const std::string& text) {
  const auto tokens = split(text, " \t");
  if (tokens.empty()) throw ConfigError("empty specification");
  Spec s;
  s.kind = tokens[0];
  for (std::size_t i = 1; i < tokens.size(); ++i) {
    const auto eq = tokens[i].find('=');
    if (eq == std::string::npos) {
      s.positional.push_back(tokens[i]);
    } else {
      s.named[tokens[i].substr(0, eq)] = tokens[i].substr(eq + 1);
    }
  }
  return s;
}

ConformalMap parse_map(const std::string& text) {
  const Spec s = parse_spec(text);
  if (s.kind == "identity") return ConformalMap::identity();
  if (s.kind == "perturbed_power") {
    const Complex c{s.num("c", 0.5), s.num("c_im", 0.0)};
    return ConformalMap::perturbed_power(c, static_cast<int>(s.num("k", 2.0)));
  }
  if (s.kind == "polynomial") {
    std::vector<Complex> coeffs;
    for (const auto& t : s.positional) coeffs.emplace_back(to_double(t), 0.0);
    return ConformalMap::polynomial(std::move(coeffs));
  }
  if (s.kind == "moebius") return ConformalMap::moebius({s.num("a", 0.0), s.num("a_im", 0.0)});
  throw ConfigError("unknown map kind '" + s.kind +
                    "' (expected identity, perturbed_power, polynomial, moebius)");
}

DensityField parse_density(const std::string& text) {
  const Spec s = parse_spec(text);
  const double scale = s.num("scale", 1.0);
  DensityField d = DensityField::constant(1.0);
  if (s.kind == "constant") {
    const double c = s.positional.empty() ? s.num("c", 1.0) : to_double(s.positional[0]);
    d = DensityField::constant(c);
  } else if (s.kind == "gaussian") {
    d = DensityField::gaussian(s.num("n", 1.0));
  } else if (s.kind == "jacobian_power") {
    d = DensityField::pullback_jacobian_power(s.num("e", 1.0));
  } else if (s.kind == "orlicz_canceling") {
    d = DensityField::pullback_orlicz_canceling(s.num("eps", 2.0));
  } else if (s.kind == "radial") {
    std::vector<std::pair<double, double>> table;
    for (const auto& t : s.positional) {
      const auto parts = split(t, ":");
      if (parts.size() != 2) throw ConfigError("radial sample '" + t + "' must be r:value");
      table.emplace_back(to_double(parts[0]), to_double(parts[1]));
    }
    d = DensityField::radial_table(std::move(table));
  } else {
    throw ConfigError("unknown density kind '" + s.kind +
                      "' (expected constant, gaussian, jacobian_power, orlicz_canceling, radial)");
  }
  return scale == 1.0 ? d : d.scaled(scale);
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

void apply(Scenario& sc, const std::string& key, const std::string& value) {
  if (key == "id") {
    sc.id = value;
  } else if (key == "map") {
    sc.map = parse_map(value);
    sc.map_text = value;
  } else if (key == "density") {
    sc.density = parse_density(value);
    sc.density_text = value;
  } else if (key == "methods") {
    sc.methods.clear();
    for (const auto& t : split(value, ", \t")) {
      const auto m = method_from_string(t);
      if (!m) throw ConfigError("unknown method tag '" + t + "'");
      sc.methods.push_back(*m);
    }
  } else if (key == "p") {
    sc.params.p = to_double(value);
  } else if (key == "q") {
    sc.params.q = to_double(value);
  } else if (key == "alpha") {
    sc.params.alpha = to_double(value);
  } else if (key == "K") {
    sc.params.K = to_double(value);
  } else if (key == "epsilon" || key == "eps") {
    sc.params.eps = to_double(value);
  } else if (key == "quad_r") {
    sc.quad_r = to_int(value);
  } else if (key == "quad_theta") {
    sc.quad_theta = to_int(value);
  } else if (key == "fem_level") {
    sc.fem_level = to_int(value);
    if (*sc.fem_level < 2 || *sc.fem_level > 8) throw ConfigError("fem_level must be in [2, 8]");
  } else if (key == "b_m_eps") {
    sc.b_m_eps = to_double(value);
    if (!(*sc.b_m_eps > 0.0)) throw ConfigError("b_m_eps must be positive");
  } else if (key == "gaussian_n") {
    sc.gaussian_n.clear();
    for (const auto& t : split(value, ", \t")) sc.gaussian_n.push_back(to_double(t));
  } else if (key == "norms") {
    sc.norms = split(value, ", \t");
    for (const auto& n : sc.norms) {
      if (n == "kq" || n == "kphi" || n.starts_with("kphi:")) continue;
      if (n.starts_with("luxemburg:")) {
        (void)parse_young(n.substr(10));
        continue;
      }
      throw ConfigError("unknown norm request '" + n + "'");
    }
  } else if (key == "corrupt_factor") {
    sc.corrupt_factor = to_double(value);
  } else {
    throw ConfigError("unknown key '" + key + "'");
  }
}

void validate(const Scenario& sc) {
  if (sc.quad_r < 4 || sc.quad_theta < 8) {
    throw ConfigError("quadrature needs quad_r >= 4 and quad_theta >= 8");
  }
  for (Method m : sc.methods) sc.params.validate(m);
  const bool sweep = std::find(sc.methods.begin(), sc.methods.end(), Method::GaussianCor34) !=
                     sc.methods.end();
  if (sweep && sc.gaussian_n.empty()) throw ConfigError("GaussianCor34 needs gaussian_n");
}

}  // namespace

YoungFunction parse_young(const std::string& text) {
  const auto parts = split(text, ":");
  if (parts.empty()) throw ConfigError("empty Young function spec");
  const std::string& k = parts[0];
  const auto arg = [&](double fallback) {
    return parts.size() > 1 ? to_double(parts[1]) : fallback;
  };
  try {
    if (k == "LogLinear") return YoungFunction::log_linear();
    if (k == "LogPow") return YoungFunction::log_pow(arg(2.0));
    if (k == "ExpSquare") return YoungFunction::exp_square();
    if (k == "ExpPow") return YoungFunction::exp_pow(arg(2.0));
    if (k == "PowerP") return YoungFunction::power(arg(2.0));
    if (k == "LogLinearTilde") return YoungFunction::log_linear_tilde();
    if (k == "ExpLinear") return YoungFunction::exp_linear();
  } catch (const ParameterError& e) {
    throw ConfigError(e.what());
  }
  throw ConfigError("unknown Young function '" + k + "'");
}

Config parse_config(std::istream& in, const std::string& source) {
  Config cfg;
  std::string raw;
  std::string line;
  int lineno = 0;
  Scenario* cur = nullptr;
  const auto fail = [&](int at, const std::string& msg) {
    throw ConfigError(source + ":" + std::to_string(at) + ": " + msg);
  };
  const auto close = [&] {
    if (!cur) return;
    try {
      validate(*cur);
    } catch (const Error& e) {
      fail(cur->line, "scenario '" + cur->id + "': " + e.what());
    }
  };
  while (std::getline(in, line)) {
    ++lineno;
    raw += line;
    raw += '\n';
    const auto hash = line.find('#');
    const std::string body = trim(hash == std::string::npos ? line : line.substr(0, hash));
    if (body.empty()) continue;
    if (body == "[scenario]") {
      close();
      cfg.scenarios.emplace_back();
      cur = &cfg.scenarios.back();
      cur->line = lineno;
      cur->id = "scenario" + std::to_string(cfg.scenarios.size());
      continue;
    }
    if (body.front() == '[') fail(lineno, "unknown section " + body);
    const auto eq = body.find('=');
    if (eq == std::string::npos) fail(lineno, "expected key = value");
    if (!cur) fail(lineno, "key outside a [scenario] section");
    try {
      apply(*cur, trim(body.substr(0, eq)), trim(body.substr(eq + 1)));
    } catch (const Error& e) {
      fail(lineno, e.what());
    }
  }
  close();
  if (cfg.scenarios.empty()) throw ConfigError(source + ": no [scenario] sections");
  cfg.hash = fnv1a(raw);
  return cfg;
}

Config load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path + ": cannot open config file");
  return parse_config(in, path);
}

}  // namespace dnb::cli
