#pragma once

// Stability and accuracy sweeps over the (CFL, delta) plane, and the three
// parameter selection strategies.

#include <optional>
#include <string>
#include <vector>

#include "stabcg/elements.hpp"
#include "stabcg/stabilization.hpp"
#include "stabcg/timeint.hpp"

namespace stabcg {

struct Combination {
  ElementFamily family = ElementFamily::Cubature;
  int degree = 1;
  StabKind stab = StabKind::None;
  SchemeKind scheme = SchemeKind::SSPRK;
  bool lps_lumped_projection = false;

  std::string label() const;
  TimeScheme time_scheme() const { return default_scheme(scheme, degree); }
  StabilizationSpec spec(double delta) const { return {stab, delta, lps_lumped_projection}; }
};

struct ScanGrid {
  std::vector<double> cfl;
  std::vector<double> delta;
  int theta_samples = 100;
};

/// Geometric grid {anchor * ratio^k} restricted to [lo, hi].
std::vector<double> geometric_grid(double lo, double hi, double ratio, double anchor = 1.0);
/// CFL ratio 2^(1/24) on [0.01, 4], delta ratio 2^(1/8) on [1e-4, 4], both anchored at 1.
ScanGrid default_grid();

enum class Strategy { MaxCFL, MinEtaU, MinEtaW };
const char* to_string(Strategy s);

struct Optimum {
  Strategy strategy = Strategy::MaxCFL;
  int i_cfl = -1;
  int i_delta = -1;
  double cfl = 0.0;
  double delta = 0.0;
  double objective = 0.0;
  bool monotone_safe = false;
};

struct ScanResult {
  Combination combination;
  ScanGrid grid;
  // Row-major over (delta, cfl): index = i_delta * n_cfl + i_cfl.
  std::vector<unsigned char> stable;
  std::vector<double> eta_u;  // NaN where unstable
  std::vector<double> eta_w;
  std::vector<Optimum> optima;  // empty when no cell is stable

  std::size_t at(int i_delta, int i_cfl) const { return i_delta * grid.cfl.size() + i_cfl; }
  bool any_stable() const;
};

/// Largest epsilon over theta = pi j / n, j = 1..n, and all modes of G.
double max_epsilon(const Combination& combo, double cfl, double delta, int theta_samples);

struct Curve {
  std::vector<double> k;
  std::vector<double> omega;     // principal mode
  std::vector<double> epsilon;
};

/// Principal-mode curves for k in (0, 2 pi / 3] with Delta x_p = 1 (cell size p).
Curve principal_curve(const Combination& combo, double cfl, double delta, int samples);

/// eta_u^2 = 3/(2 pi) [int (e^eps - 1)^2 dk + int e^eps (omega - a k)^2 dk].
double eta_u(const Curve& c, double speed = 1.0);
/// eta_w^2 = int ((omega - a k) / (a k))^2 dk.
double eta_w(const Curve& c, double speed = 1.0);

ScanResult scan(const Combination& combo, const ScanGrid& grid, int jobs = 1);

/// Throws NoStableRegion when the mask is empty.
Optimum optimize(const ScanResult& result, Strategy strategy, double mu = 1.3);

/// True iff every grid cfl at or below the optimum's is stable at its delta.
bool monotone_safety_check(const ScanResult& result, const Optimum& opt);

/// Fills result.optima with all three strategies (left empty without a stable cell).
void optimize_all(ScanResult& result, double mu = 1.3);

}  // namespace stabcg
