#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "stabcg/commands.hpp"

using namespace stabcg;
namespace fs = std::filesystem;

namespace {

int cli(const std::string& args) {
  const std::string cmd = std::string(STABCG_CLI) + " " + args + " >/dev/null 2>&1";
  const int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(const char* name) {
  const fs::path d = fs::temp_directory_path() / name;
  fs::remove_all(d);
  return d;
}

}  // namespace

TEST_CASE("configuration errors exit with 2") {
  CHECK(cli("convergence --levels 1") == 2);
  CHECK(cli("convergence --problem tides") == 2);
  CHECK(cli("modes --degree 4 --cfl 0.1") == 2);
  const fs::path d = scratch("stabcg_cli_cfg");
  fs::create_directories(d);
  std::ofstream(d / "bad.json") << R"({"degree": 2, "colour": "red"})";
  CHECK(cli("scan --config " + (d / "bad.json").string()) == 2);
  CHECK_THROWS_AS(parse_config(R"({"grid": {"step": 2}})"), Error);
}

TEST_CASE("exit code mapping") {
  CHECK(exit_code_for(ErrorKind::Config) == kExitConfig);
  CHECK(exit_code_for(ErrorKind::UnsupportedDegree) == kExitConfig);
  CHECK(exit_code_for(ErrorKind::NoStableRegion) == kExitNoStableRegion);
  CHECK(exit_code_for(ErrorKind::BlowUp) == kExitNumerical);
}

TEST_CASE("SUPG shallow water is rejected") {
  RunConfig c;
  c.command = "convergence";
  c.problem = ProblemKind::ShallowWater;
  c.stab = StabKind::SUPG;
  CHECK_THROWS_AS(validate(c), Error);
}

TEST_CASE("config round trip") {
  RunConfig c;
  c.command = "solve";
  c.degree = 3;
  c.cfl = 0.25;
  c.cells = {12};
  const RunConfig back = parse_config(c.to_json());
  CHECK(back.to_json() == c.to_json());
}

TEST_CASE("outputs are deterministic") {
  const fs::path d = scratch("stabcg_cli_det");
  const std::string args = "modes --family bernstein --degree 2 --stab lps --time dec --cfl 0.2 "
                           "--delta 0.05 --theta-samples 30 --out " + d.string();
  REQUIRE(cli(args) == 0);
  const fs::path f = d / "modes_bernstein_p2_lps_dec.csv";
  REQUIRE(fs::exists(f));
  const std::string first = slurp(f);
  REQUIRE(cli(args) == 0);
  CHECK(slurp(f) == first);

  const std::string scan_args = "optimize --family cubature --degree 1 --stab supg --time rk --out " + d.string();
  REQUIRE(cli(scan_args) == 0);
  const std::string opt = slurp(d / "optimize.csv");
  REQUIRE(cli(scan_args) == 0);
  CHECK(slurp(d / "optimize.csv") == opt);
}
