#include "stabcg/scan.hpp"

#include <cmath>
#include <limits>
#include <thread>

#include "stabcg/errors.hpp"
#include "stabcg/fourier.hpp"

namespace stabcg {

namespace {

constexpr double kUnstableEps = 1e-12;

// Per-(combination, delta) cache: symbols and, for polynomial schemes,
// eigenvalues of the semi-discrete generator, on a fixed list of theta.
class SymbolCache {
 public:
  SymbolCache(const Combination& combo, double delta, const std::vector<double>& thetas)
      : scheme_(combo.time_scheme()), dx_(combo.degree) {
    const ReferenceElement ref = build_reference_element(combo.family, combo.degree);
    const StabilizationSpec spec = combo.spec(delta);
    poly_ = scheme_.kind != SchemeKind::DeC;
    if (poly_) nu_ = stability_polynomial(scheme_);
    for (double th : thetas) {
      SymbolPair s = assemble_symbol(ref, spec, th, dx_, 1.0);
      if (poly_) generator_eigs_.push_back(small_complex_eigenvalues(s.generator()));
      symbols_.push_back(std::move(s));
    }
  }

  double dx() const { return dx_; }
  std::size_t size() const { return symbols_.size(); }

  std::vector<cplx> g_eigenvalues(std::size_t i, double dt) const {
    if (!poly_) return small_complex_eigenvalues(amplification_from_symbol(symbols_[i], scheme_, dt));
    std::vector<cplx> out;
    for (const cplx& mu : generator_eigs_[i]) {
      const cplx z = dt * mu;
      cplx g = 1.0;
      cplx pw = 1.0;
      for (double nu : nu_) {
        pw *= z;
        g += nu * pw;
      }
      out.push_back(g);
    }
    return out;
  }

 private:
  TimeScheme scheme_;
  double dx_;
  bool poly_ = true;
  std::vector<double> nu_;
  std::vector<SymbolPair> symbols_;
  std::vector<std::vector<cplx>> generator_eigs_;
};

std::vector<double> stability_thetas(int n) {
  std::vector<double> t(n);
  for (int j = 1; j <= n; ++j) t[j - 1] = M_PI * j / n;
  return t;
}

std::vector<double> eta_wavenumbers(int n) {
  std::vector<double> k(n);
  for (int j = 1; j <= n; ++j) k[j - 1] = (2.0 * M_PI / 3.0) * j / n;
  return k;
}

bool is_stable(const SymbolCache& cache, double dt) {
  for (std::size_t i = 0; i < cache.size(); ++i)
    for (const cplx& l : cache.g_eigenvalues(i, dt))
      if (std::log(std::abs(l)) / dt > kUnstableEps) return false;
  return true;
}

Curve curve_from_cache(const SymbolCache& cache, const std::vector<double>& ks, double dt) {
  Curve c;
  for (std::size_t i = 0; i < ks.size(); ++i) {
    const ModeAnalysis m = extract_modes(cache.g_eigenvalues(i, dt), ks[i] * cache.dx(), ks[i], dt, 1.0);
    c.k.push_back(ks[i]);
    c.omega.push_back(m.modes[m.principal].omega_over_k * ks[i]);
    c.epsilon.push_back(m.modes[m.principal].epsilon);
  }
  return c;
}

// Trapezoid over the samples plus a constant extension of the first sample to k = 0.
template <class F>
double integrate(const std::vector<double>& k, F f) {
  if (k.empty()) return 0.0;
  double sum = k[0] * f(0);
  for (std::size_t i = 1; i < k.size(); ++i) sum += 0.5 * (k[i] - k[i - 1]) * (f(i - 1) + f(i));
  return sum;
}

void scan_row(const Combination& combo, const ScanGrid& grid, int id, ScanResult& out) {
  const double delta = grid.delta[id];
  const SymbolCache stab_cache(combo, delta, stability_thetas(grid.theta_samples));
  const std::vector<double> ks = eta_wavenumbers(grid.theta_samples);
  std::vector<double> thetas;
  for (double k : ks) thetas.push_back(k * combo.degree);
  const SymbolCache eta_cache(combo, delta, thetas);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t ic = 0; ic < grid.cfl.size(); ++ic) {
    const std::size_t idx = out.at(id, static_cast<int>(ic));
    const double dt = grid.cfl[ic] * stab_cache.dx();
    bool ok = false;
    try {
      ok = is_stable(stab_cache, dt);
    } catch (const Error&) {
      ok = false;
    }
    out.stable[idx] = ok ? 1 : 0;
    out.eta_u[idx] = nan;
    out.eta_w[idx] = nan;
    if (!ok) continue;
    const Curve c = curve_from_cache(eta_cache, ks, dt);
    out.eta_u[idx] = eta_u(c);
    out.eta_w[idx] = eta_w(c);
  }
}

}  // namespace

std::string Combination::label() const {
  std::string s = std::string(to_string(family)) + "_p" + std::to_string(degree) + "_" +
                  std::string(to_string(stab)) + "_" + std::string(to_string(scheme));
  if (lps_lumped_projection && stab == StabKind::LPS) s += "_lumped";
  return s;
}

std::vector<double> geometric_grid(double lo, double hi, double ratio, double anchor) {
  if (!(lo > 0.0) || !(hi >= lo) || !(ratio > 1.0) || !(anchor > 0.0))
    throw Error(ErrorKind::Config, "invalid geometric grid");
  const double lr = std::log(ratio);
  const long k0 = static_cast<long>(std::ceil(std::log(lo / anchor) / lr - 1e-9));
  const long k1 = static_cast<long>(std::floor(std::log(hi / anchor) / lr + 1e-9));
  std::vector<double> g;
  for (long k = k0; k <= k1; ++k) g.push_back(anchor * std::pow(ratio, static_cast<double>(k)));
  return g;
}

ScanGrid default_grid() {
  ScanGrid g;
  g.cfl = geometric_grid(0.01, 4.0, std::pow(2.0, 1.0 / 24.0));
  g.delta = geometric_grid(1e-4, 4.0, std::pow(2.0, 1.0 / 8.0));
  g.theta_samples = 100;
  return g;
}

const char* to_string(Strategy s) {
  switch (s) {
    case Strategy::MaxCFL: return "max_cfl";
    case Strategy::MinEtaU: return "min_eta_u";
    case Strategy::MinEtaW: return "min_eta_w";
  }
  return "?";
}

bool ScanResult::any_stable() const {
  for (unsigned char s : stable)
    if (s) return true;
  return false;
}

double max_epsilon(const Combination& combo, double cfl, double delta, int theta_samples) {
  const SymbolCache cache(combo, delta, stability_thetas(theta_samples));
  const double dt = cfl * cache.dx();
  double worst = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < cache.size(); ++i)
    for (const cplx& l : cache.g_eigenvalues(i, dt)) worst = std::max(worst, std::log(std::abs(l)) / dt);
  return worst;
}

Curve principal_curve(const Combination& combo, double cfl, double delta, int samples) {
  const std::vector<double> ks = eta_wavenumbers(samples);
  std::vector<double> thetas;
  for (double k : ks) thetas.push_back(k * combo.degree);
  const SymbolCache cache(combo, delta, thetas);
  return curve_from_cache(cache, ks, cfl * cache.dx());
}

double eta_u(const Curve& c, double speed) {
  const double damp = integrate(c.k, [&](std::size_t i) {
    const double e = std::exp(c.epsilon[i]) - 1.0;
    return e * e;
  });
  const double disp = integrate(c.k, [&](std::size_t i) {
    const double d = c.omega[i] - speed * c.k[i];
    return std::exp(c.epsilon[i]) * d * d;
  });
  return std::sqrt(3.0 / (2.0 * M_PI) * (damp + disp));
}

double eta_w(const Curve& c, double speed) {
  return std::sqrt(integrate(c.k, [&](std::size_t i) {
    const double ex = speed * c.k[i];
    const double d = (c.omega[i] - ex) / ex;
    return d * d;
  }));
}

ScanResult scan(const Combination& combo, const ScanGrid& grid, int jobs) {
  if (grid.cfl.empty() || grid.delta.empty() || grid.theta_samples < 1)
    throw Error(ErrorKind::Config, "scan grid is empty");
  ScanResult out;
  out.combination = combo;
  out.grid = grid;
  const std::size_t n = grid.cfl.size() * grid.delta.size();
  out.stable.assign(n, 0);
  out.eta_u.assign(n, 0.0);
  out.eta_w.assign(n, 0.0);
  const int nd = static_cast<int>(grid.delta.size());
  jobs = std::max(1, std::min(jobs, nd));
  if (jobs == 1) {
    for (int id = 0; id < nd; ++id) scan_row(combo, grid, id, out);
  } else {
    // Rows write disjoint slices, so the result does not depend on scheduling.
    std::vector<std::thread> workers;
    for (int w = 0; w < jobs; ++w)
      workers.emplace_back([&, w] {
        for (int id = w; id < nd; id += jobs) scan_row(combo, grid, id, out);
      });
    for (auto& t : workers) t.join();
  }
  optimize_all(out);
  return out;
}

Optimum optimize(const ScanResult& r, Strategy strategy, double mu) {
  const int nc = static_cast<int>(r.grid.cfl.size());
  const int nd = static_cast<int>(r.grid.delta.size());
  const std::vector<double>* field = nullptr;
  if (strategy == Strategy::MinEtaU) field = &r.eta_u;
  if (strategy == Strategy::MinEtaW) field = &r.eta_w;

  double floor_value = std::numeric_limits<double>::infinity();
  if (field)
    for (std::size_t i = 0; i < field->size(); ++i)
      if (r.stable[i] && std::isfinite((*field)[i])) floor_value = std::min(floor_value, (*field)[i]);

  Optimum best;
  best.strategy = strategy;
  for (int id = 0; id < nd; ++id)
    for (int ic = 0; ic < nc; ++ic) {
      const std::size_t idx = r.at(id, ic);
      if (!r.stable[idx]) continue;
      double obj = r.grid.cfl[ic];
      if (field) {
        obj = (*field)[idx];
        if (!std::isfinite(obj) || obj > mu * floor_value + 1e-12) continue;
      }
      bool take = best.i_cfl < 0;
      if (!take) {
        if (ic != best.i_cfl) {
          take = ic > best.i_cfl;
        } else if (field && obj != best.objective) {
          take = obj < best.objective;
        } else {
          take = id > best.i_delta;
        }
      }
      if (take) {
        best.i_cfl = ic;
        best.i_delta = id;
        best.cfl = r.grid.cfl[ic];
        best.delta = r.grid.delta[id];
        best.objective = obj;
      }
    }
  if (best.i_cfl < 0) throw Error(ErrorKind::NoStableRegion, "no stable cell for " + r.combination.label());
  best.monotone_safe = monotone_safety_check(r, best);
  return best;
}

bool monotone_safety_check(const ScanResult& r, const Optimum& opt) {
  for (int ic = 0; ic <= opt.i_cfl; ++ic)
    if (!r.stable[r.at(opt.i_delta, ic)]) return false;
  return true;
}

void optimize_all(ScanResult& r, double mu) {
  r.optima.clear();
  if (!r.any_stable()) return;
  for (Strategy s : {Strategy::MaxCFL, Strategy::MinEtaU, Strategy::MinEtaW})
    r.optima.push_back(optimize(r, s, mu));
}

}  // namespace stabcg
