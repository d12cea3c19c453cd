#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "dnb/bounds.hpp"
#include "dnb/cli.hpp"
#include "dnb/error.hpp"
#include "dnb/fem.hpp"

using namespace dnb;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

std::string write_config(const std::string& name, const std::string& text) {
  const fs::path dir = fs::temp_directory_path() / "dnb_cli_tests";
  fs::create_directories(dir);
  const fs::path p = dir / name;
  std::ofstream(p) << text;
  return p.string();
}

Result run(const std::string& command, const std::string& path, int jobs = 1) {
  cli::Options opt;
  opt.command = command;
  opt.config_path = path;
  opt.jobs = jobs;
  opt.fem_level = 5;
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(opt, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::vector<std::string>> rows(const std::string& csv) {
  std::vector<std::vector<std::string>> out;
  std::istringstream in(csv);
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (header) {
      header = false;
      continue;
    }
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    out.push_back(cells);
  }
  return out;
}

const char* kDisk = R"(# disk fixtures
[scenario]
id = disk
map = identity
density = constant 1
methods = EsssupThm31, LpKqThm32, OrliczThm42
b_m_eps = 1.0
norms = kq, luxemburg:LogLinear, kphi:LogLinear
)";

}  // namespace

TEST_CASE("bound command") {
  const auto r = run("bound", write_config("disk.cfg", kDisk));
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("# dnb ", 0) == 0);
  CHECK(r.out.find("config_fnv1a=") != std::string::npos);
  CHECK(r.out.find("scenario,method,bound,bound_log,intermediates,flags\n") != std::string::npos);
  const auto t = rows(r.out);
  REQUIRE(t.size() == 3);
  CHECK(t[0][0] == "disk");
  CHECK(t[0][1] == "EsssupThm31");
  CHECK(std::stod(t[0][2]) == doctest::Approx(3.390).epsilon(1e-3));
  CHECK(t[2][5] == "ConstantConventionConservative");
}

TEST_CASE("flags reach the CSV verbatim") {
  const auto r = run("bound", write_config("flags.cfg", R"([scenario]
id = q
map = perturbed_power c=0.5 k=2
density = gaussian n=4
methods = QuasidiscCor33, OrliczQuasidiscThm43
alpha = 4
K = 1.2
q = 5
p = 1.5
)"));
  REQUIRE(r.code == 0);
  ScenarioParams prm;
  prm.alpha = 4.0;
  prm.K = 1.2;
  prm.q = 5.0;
  const auto map = ConformalMap::perturbed_power({0.5, 0.0}, 2);
  const auto quad = build_disk_quadrature(16, 32);
  const auto rho = DensityField::gaussian(4.0);
  const auto a = mu_lower_quasidisc(map, rho, prm, quad);
  const auto b = mu_lower_orlicz_quasidisc(map, rho, prm,
                                           b_m2_disk_estimate(8, YoungFunction::exp_pow(2.0)), quad, true);
  const auto t = rows(r.out);
  REQUIRE(t.size() == 2);
  CHECK(t[0].back() == a.flag_string());
  CHECK(t[1].back() == b.flag_string());
  CHECK(t[1].back().find("BEstimatedLower") != std::string::npos);
  CHECK(t[1].back().find("LogOverflow") != std::string::npos);
}

TEST_CASE("parameter and config errors exit 2 with a line number") {
  const auto path = write_config("badq.cfg", R"(# comment line

[scenario]
id = bad
methods = LpKqThm32
p = 1.5
q = 6.5
)");
  const auto r = run("bound", path);
  CHECK(r.code == 2);
  CHECK(r.err.find(path + ":3:") != std::string::npos);
  CHECK(r.err.find("LpKqThm32") != std::string::npos);
  CHECK(r.err.find("2p/(2-p)") != std::string::npos);
  CHECK(r.out.empty());

  const auto unk = run("bound", write_config("unk.cfg", "[scenario]\nmethods = EsssupThm31\nfoo = 1\n"));
  CHECK(unk.code == 2);
  CHECK(unk.err.find("unk.cfg:3:") != std::string::npos);

  const auto tag = run("bound", write_config("tag.cfg", "[scenario]\nmethods = Thm99\n"));
  CHECK(tag.code == 2);
  CHECK(tag.err.find("tag.cfg:2:") != std::string::npos);

  CHECK(run("bound", "/nonexistent/x.cfg").code == 2);
  CHECK(run("frobnicate", write_config("disk.cfg", kDisk)).code == 2);
  CHECK(run("bound", write_config("nomethods.cfg", "[scenario]\nid = x\n")).code == 2);
  CHECK(run("bound", write_config("map.cfg", "[scenario]\nmap = polynomial 0 1 0.6\nmethods = EsssupThm31\n")).code == 2);
}

TEST_CASE("sweep command") {
  const auto r = run("sweep", write_config("sweep.cfg", R"([scenario]
id = g
map = identity
gaussian_n = 10, 100, 1000, 10000
quad_theta = 64
)"));
  REQUIRE(r.code == 0);
  const auto t = rows(r.out);
  REQUIRE(t.size() == 6);
  CHECK(t[0][1] == "10");
  CHECK(t[4][1] == "slope");
  CHECK(std::stod(t[4][2]) == doctest::Approx(0.2).epsilon(0.05));
  CHECK(t[5][1] == "chain_slope");
  for (int i = 0; i < 4; ++i) CHECK(t[i].back().find("DominationViolated") == std::string::npos);
}

TEST_CASE("verify command and the corrupted-constant self-test") {
  const auto path = write_config("verify.cfg", R"([scenario]
id = disk
methods = EsssupThm31, LpKqThm32
)");
  const auto r = run("verify", path);
  REQUIRE(r.code == 0);
  const auto t = rows(r.out);
  REQUIRE(t.size() == 2);
  CHECK(std::stod(t[0][5]) == doctest::Approx(1.0).epsilon(1e-3));
  CHECK(t[0][6] == "true");
  CHECK(t[1][6] == "true");

  const auto bad = run("verify", write_config("corrupt.cfg", R"([scenario]
id = disk
methods = EsssupThm31
corrupt_factor = 10
)"));
  CHECK(bad.code == 1);
  const auto tb = rows(bad.out);
  REQUIRE(tb.size() == 1);
  CHECK(tb[0][6] == "false");
  CHECK(std::stod(tb[0][5]) == doctest::Approx(10.0).epsilon(1e-3));
}

TEST_CASE("norms command") {
  const auto r = run("norms", write_config("disk.cfg", kDisk));
  REQUIRE(r.code == 0);
  const auto t = rows(r.out);
  REQUIRE(t.size() == 3);
  CHECK(std::stod(t[0][2]) == doctest::Approx(std::sqrt(3.14159265358979)).epsilon(1e-12));
  CHECK(std::stod(t[1][2]) == doctest::Approx(3.459).epsilon(1e-3));
  CHECK(std::stod(t[2][2]) == doctest::Approx(4.3472).epsilon(1e-4));
  CHECK(run("norms", write_config("nonorms.cfg", "[scenario]\nmethods = EsssupThm31\n")).code == 2);
}

TEST_CASE("identical configs give byte-identical output at any job count") {
  const std::string text = std::string(kDisk) + R"(
[scenario]
id = pp
map = perturbed_power c=0.3 k=3
density = gaussian n=1
methods = EsssupThm31, LpKqThm32, QuasidiscCor33
[scenario]
id = moeb
map = moebius a=0.3
density = jacobian_power e=1
methods = EsssupThm31
)";
  const auto path = write_config("det.cfg", text);
  const auto a = run("verify", path, 1);
  const auto b = run("verify", path, 1);
  const auto c = run("verify", path, 4);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out == c.out);
  const auto t = rows(a.out);
  REQUIRE(t.size() == 7);
  CHECK(t[0][0] == "disk");
  CHECK(t[3][0] == "pp");
  CHECK(t[6][0] == "moeb");
}

TEST_CASE("the installed binary reports exit codes") {
  const std::string bin = DNB_BINARY;
  const auto status = [&](const std::string& args) {
    const int s = std::system((bin + " " + args + " > /dev/null 2>&1").c_str());
    return WEXITSTATUS(s);
  };
  const auto good = write_config("disk.cfg", kDisk);
  CHECK(status("--config " + good + " bound") == 0);
  CHECK(status("--config " + good + " --jobs 0 bound") == 2);
  CHECK(status("bound") == 2);
  CHECK(status("--config " + good) == 2);
  const auto corrupt = write_config("corrupt2.cfg", "[scenario]\nmethods = EsssupThm31\ncorrupt_factor = 10\n");
  CHECK(status("--config " + corrupt + " --fem-level 4 verify") == 1);
  const auto out = (fs::temp_directory_path() / "dnb_cli_tests" / "out.csv").string();
  CHECK(status("--config " + good + " --out " + out + " norms") == 0);
  std::ifstream in(out);
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(ss.str().find("scenario,quantity,value") != std::string::npos);
}
