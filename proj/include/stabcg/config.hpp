#pragma once

// Resolved run configuration shared by the command-line subcommands.

#include <optional>
#include <string>
#include <vector>

#include "stabcg/elements.hpp"
#include "stabcg/problems.hpp"
#include "stabcg/stabilization.hpp"
#include "stabcg/timeint.hpp"

namespace stabcg {

struct GridConfig {
  double cfl_min = 0.01;
  double cfl_max = 4.0;
  double cfl_ratio = 1.0293022366434921;  // 2^(1/24)
  double delta_min = 1e-4;
  double delta_max = 4.0;
  double delta_ratio = 1.0905077326652577;  // 2^(1/8)
};

struct RunConfig {
  std::string command;
  // Unset combination fields mean "all values" for scan, optimize and convergence.
  std::optional<ElementFamily> family;
  std::optional<int> degree;
  std::optional<StabKind> stab;
  std::optional<SchemeKind> time;
  std::optional<double> cfl;
  std::optional<double> delta;
  std::optional<int> theta_samples;
  ProblemKind problem = ProblemKind::Advection;
  std::vector<int> cells;
  int levels = 4;
  std::string out = "out";
  int jobs = 1;
  unsigned seed = 0;
  double mu = 1.3;
  bool semi_discrete = false;
  bool lps_lumped = false;
  std::string nonlinear_speed = "global_max";
  GridConfig grid;

  /// Canonical JSON text (sorted keys) embedded in every output file.
  std::string to_json(int indent = -1) const;
};

/// Parses a JSON config file body. Unknown keys and bad values throw ErrorKind::Config.
RunConfig parse_config(const std::string& json_text);
RunConfig load_config(const std::string& path);

/// Checks ranges and command requirements; throws ErrorKind::Config.
void validate(const RunConfig& config);

}  // namespace stabcg
