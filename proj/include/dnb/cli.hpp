#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "dnb/bounds.hpp"
#include "dnb/conformal.hpp"
#include "dnb/density.hpp"

namespace dnb::cli {

inline constexpr const char* kVersion = "0.1.0";

struct Scenario {
  std::string id;
  int line = 0;  ///< line of the [scenario] header
  std::string map_text = "identity";
  std::string density_text = "constant 1";
  ConformalMap map = ConformalMap::identity();
  DensityField density = DensityField::constant(1.0);
  ScenarioParams params;
  std::vector<Method> methods;
  int quad_r = 16;
  int quad_theta = 32;
  std::optional<int> fem_level;
  std::optional<double> b_m_eps;
  std::vector<double> gaussian_n;
  std::vector<std::string> norms;
  double corrupt_factor = 1.0;  ///< test hook: multiplies every bound
};

struct Config {
  std::vector<Scenario> scenarios;
  std::uint64_t hash = 0;  ///< FNV-1a of the raw text
};

/// Line-oriented key=value format with [scenario] headers; '#' starts a
/// comment. ConfigError messages carry "source:line:".
Config parse_config(std::istream& in, const std::string& source);
Config load_config(const std::string& path);

/// Parses a Young-function spec such as "LogLinear", "LogPow:2", "ExpPow:2",
/// "ExpSquare", "PowerP:3".
YoungFunction parse_young(const std::string& text);

struct Options {
  std::string command;
  std::string config_path;
  std::string out_path;  ///< empty: stdout
  int jobs = 1;
  int fem_level = 6;
  double tol = 2e-2;
};

/// Runs one command; returns the process exit code (0 ok, 1 soundness
/// violation, 2 usage / configuration error).
int run(const Options& opt, std::ostream& out, std::ostream& err);

}  // namespace dnb::cli
