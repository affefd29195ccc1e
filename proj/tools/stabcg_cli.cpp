#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "stabcg/commands.hpp"

using namespace stabcg;

int main(int argc, char** argv) {
  CLI::App app{"Fourier analysis and convergence studies for stabilized continuous Galerkin"};
  app.require_subcommand(1);

  std::string config_file, family, stab, time, problem, out, nonlinear_speed;
  int degree = 0, theta_samples = 0, levels = 0, jobs = 0;
  unsigned seed = 0;
  double cfl = 0, delta = 0, mu = 0;
  std::vector<int> cells;
  bool semi = false, lumped = false;

  std::vector<CLI::Option*> opts;
  for (const char* name : {"modes", "scan", "optimize", "solve", "convergence"}) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--config", config_file, "JSON config file; flags override its values");
    sub->add_option("--family", family)->check(CLI::IsMember({"basic", "cubature", "bernstein"}));
    sub->add_option("--degree", degree)->check(CLI::Range(1, 3));
    sub->add_option("--stab", stab)->check(CLI::IsMember({"none", "supg", "cip", "lps"}));
    sub->add_option("--time", time)->check(CLI::IsMember({"rk", "ssprk", "dec"}));
    sub->add_option("--cfl", cfl);
    sub->add_option("--delta", delta);
    sub->add_option("--theta-samples", theta_samples);
    sub->add_option("--problem", problem)->check(CLI::IsMember({"advection", "burgers", "sw"}));
    sub->add_option("--cells", cells)->delimiter(',');
    sub->add_option("--levels", levels);
    sub->add_option("--out", out);
    sub->add_option("--jobs", jobs);
    sub->add_option("--seed", seed);
    sub->add_option("--mu", mu, "relaxation factor of the accuracy strategies");
    sub->add_option("--nonlinear-speed", nonlinear_speed)
        ->check(CLI::IsMember({"global_max", "initial"}));
    sub->add_flag("--semi-discrete", semi, "modes of the semi-discrete operator");
    sub->add_flag("--lps-lumped", lumped, "diagonal mass in the LPS projection");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfig;
  }

  CLI::App* sub = app.get_subcommands().front();
  auto given = [sub](const char* flag) { return sub->get_option(flag)->count() > 0; };
  try {
    RunConfig c = given("--config") ? load_config(config_file) : RunConfig{};
    c.command = sub->get_name();
    if (given("--family")) c.family = parse_family(family);
    if (given("--degree")) c.degree = degree;
    if (given("--stab")) c.stab = parse_stab(stab);
    if (given("--time")) c.time = parse_scheme(time);
    if (given("--cfl")) c.cfl = cfl;
    if (given("--delta")) c.delta = delta;
    if (given("--theta-samples")) c.theta_samples = theta_samples;
    if (given("--problem")) c.problem = parse_problem(problem);
    if (given("--cells")) c.cells = cells;
    if (given("--levels")) c.levels = levels;
    if (given("--out")) c.out = out;
    if (given("--jobs")) c.jobs = jobs;
    if (given("--seed")) c.seed = seed;
    if (given("--mu")) c.mu = mu;
    if (given("--nonlinear-speed")) c.nonlinear_speed = nonlinear_speed;
    if (given("--semi-discrete")) c.semi_discrete = semi;
    if (given("--lps-lumped")) c.lps_lumped = lumped;
    return run_command(c, std::cerr);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.kind());
  }
}
