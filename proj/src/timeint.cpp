#include "stabcg/timeint.hpp"

#include "stabcg/errors.hpp"

namespace stabcg {

namespace {

void check_finite(const Eigen::VectorXd& u) {
  if (!u.allFinite()) throw Error(ErrorKind::NonFiniteState, "non-finite state during time step");
}

using Poly = std::vector<double>;

Poly poly_add(const Poly& a, const Poly& b, double cb) {
  Poly r(std::max(a.size(), b.size()), 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] += cb * b[i];
  return r;
}

Poly poly_shift(const Poly& a) {
  Poly r(a.size() + 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i + 1] = a[i];
  return r;
}

std::vector<double> tail(const Poly& p) {
  std::vector<double> nu(p.begin() + 1, p.end());
  while (!nu.empty() && nu.back() == 0.0) nu.pop_back();
  return nu;
}

}  // namespace

std::string_view to_string(SchemeKind kind) {
  switch (kind) {
    case SchemeKind::RK: return "rk";
    case SchemeKind::SSPRK: return "ssprk";
    case SchemeKind::DeC: return "dec";
  }
  return "?";
}

SchemeKind parse_scheme(std::string_view name) {
  if (name == "rk") return SchemeKind::RK;
  if (name == "ssprk") return SchemeKind::SSPRK;
  if (name == "dec") return SchemeKind::DeC;
  throw Error(ErrorKind::Config, "unknown time scheme '" + std::string(name) + "'");
}

std::string TimeScheme::name() const {
  switch (kind) {
    case SchemeKind::RK: return rk.name;
    case SchemeKind::SSPRK: return ssprk.name;
    case SchemeKind::DeC: return "DeC" + std::to_string(order);
  }
  return "?";
}

ButcherTableau butcher_tableau(int order) {
  switch (order) {
    case 2: return {"RK2", 2, {{1.0}}, {0.5, 0.5}};
    case 3: return {"RK3", 3, {{0.5}, {-1.0, 2.0}}, {1.0 / 6.0, 2.0 / 3.0, 1.0 / 6.0}};
    case 4:
      return {"RK4", 4, {{0.5}, {0.0, 0.5}, {0.0, 0.0, 1.0}},
              {1.0 / 6.0, 1.0 / 3.0, 1.0 / 3.0, 1.0 / 6.0}};
    default: throw Error(ErrorKind::Unsupported, "RK order must be 2, 3 or 4");
  }
}

ShuOsherTableau shu_osher_tableau(int order) {
  switch (order) {
    case 2:
      return {"SSPRK(3,2)", 2,
              {{1.0}, {0.0, 1.0}, {1.0 / 3.0, 0.0, 2.0 / 3.0}},
              {{0.5}, {0.0, 0.5}, {0.0, 0.0, 1.0 / 3.0}}};
    case 3:
      return {"SSPRK(4,3)", 3,
              {{1.0}, {0.0, 1.0}, {2.0 / 3.0, 0.0, 1.0 / 3.0}, {0.0, 0.0, 0.0, 1.0}},
              {{0.5}, {0.0, 0.5}, {0.0, 0.0, 1.0 / 6.0}, {0.0, 0.0, 0.0, 0.5}}};
    case 4:
      return {"SSPRK(5,4)", 4,
              {{1.0},
               {0.444370493651235, 0.555629506348765},
               {0.620101851488403, 0.0, 0.379898148511597},
               {0.178079954393132, 0.0, 0.0, 0.821920045606868},
               {0.0, 0.0, 0.517231671970585, 0.096059710526147, 0.386708617503269}},
              {{0.391752226571890},
               {0.0, 0.368410593050371},
               {0.0, 0.0, 0.251891774271694},
               {0.0, 0.0, 0.0, 0.544974750228521},
               {0.0, 0.0, 0.0, 0.063692468666290, 0.226007483236906}}};
    default: throw Error(ErrorKind::Unsupported, "SSPRK order must be 2, 3 or 4");
  }
}

DeCConfig dec_config(int order) {
  switch (order) {
    case 2: return {1, 2, {1.0}, {{0.5, 0.5}}};
    case 3:
      return {2, 3, {0.5, 1.0},
              {{5.0 / 24.0, 1.0 / 3.0, -1.0 / 24.0}, {1.0 / 6.0, 2.0 / 3.0, 1.0 / 6.0}}};
    case 4:
      return {3, 4, {1.0 / 3.0, 2.0 / 3.0, 1.0},
              {{1.0 / 8.0, 19.0 / 72.0, -5.0 / 72.0, 1.0 / 72.0},
               {1.0 / 9.0, 4.0 / 9.0, 1.0 / 9.0, 0.0},
               {1.0 / 8.0, 3.0 / 8.0, 3.0 / 8.0, 1.0 / 8.0}}};
    default: throw Error(ErrorKind::Unsupported, "DeC order must be 2, 3 or 4");
  }
}

TimeScheme default_scheme(SchemeKind kind, int degree) {
  if (degree < 1 || degree > 3)
    throw Error(ErrorKind::UnsupportedDegree, "degree outside [1,3]");
  TimeScheme s;
  s.kind = kind;
  s.order = degree + 1;
  switch (kind) {
    case SchemeKind::RK: s.rk = butcher_tableau(s.order); break;
    case SchemeKind::SSPRK: s.ssprk = shu_osher_tableau(s.order); break;
    case SchemeKind::DeC: s.dec = dec_config(s.order); break;
  }
  return s;
}

std::vector<double> expand_ssprk_coefficients(const ShuOsherTableau& tableau) {
  std::vector<Poly> stage{{1.0}};
  for (std::size_t s = 0; s < tableau.gamma.size(); ++s) {
    Poly next{0.0};
    for (std::size_t j = 0; j < tableau.gamma[s].size(); ++j) {
      next = poly_add(next, stage[j], tableau.gamma[s][j]);
      next = poly_add(next, poly_shift(stage[j]), tableau.mu[s][j]);
    }
    stage.push_back(next);
  }
  return tail(stage.back());
}

std::vector<double> expand_rk_coefficients(const ButcherTableau& tableau) {
  // k_s = z U^(s); U^(s) = 1 + sum_j alpha^s_j k_j.
  std::vector<Poly> k{poly_shift({1.0})};
  for (const auto& row : tableau.alpha) {
    Poly u{1.0};
    for (std::size_t j = 0; j < row.size(); ++j) u = poly_add(u, k[j], row[j]);
    k.push_back(poly_shift(u));
  }
  Poly result{1.0};
  for (std::size_t s = 0; s < tableau.beta.size(); ++s) result = poly_add(result, k[s], tableau.beta[s]);
  return tail(result);
}

std::vector<double> stability_polynomial(const TimeScheme& scheme) {
  switch (scheme.kind) {
    case SchemeKind::RK: return expand_rk_coefficients(scheme.rk);
    case SchemeKind::SSPRK: return expand_ssprk_coefficients(scheme.ssprk);
    case SchemeKind::DeC: break;
  }
  throw Error(ErrorKind::Unsupported, "DeC has no scalar stability polynomial for M != D");
}

Eigen::VectorXd rk_step(OdeSystem& system, const Eigen::VectorXd& u, double t, double dt,
                        const ButcherTableau& tableau) {
  system.begin_step(u, t);
  const std::size_t stages = tableau.beta.size();
  std::vector<Eigen::VectorXd> k;
  k.reserve(stages);
  k.push_back(system.solve_mass(system.residual(u, t)));
  for (std::size_t s = 1; s < stages; ++s) {
    Eigen::VectorXd stage = u;
    double c = 0.0;
    for (std::size_t j = 0; j < tableau.alpha[s - 1].size(); ++j) {
      const double a = tableau.alpha[s - 1][j];
      if (a != 0.0) stage += dt * a * k[j];
      c += a;
    }
    system.constrain(stage, t + c * dt);
    check_finite(stage);
    k.push_back(system.solve_mass(system.residual(stage, t + c * dt)));
  }
  Eigen::VectorXd next = u;
  for (std::size_t s = 0; s < stages; ++s) next += dt * tableau.beta[s] * k[s];
  system.constrain(next, t + dt);
  check_finite(next);
  return next;
}

Eigen::VectorXd ssprk_step(OdeSystem& system, const Eigen::VectorXd& u, double t, double dt,
                           const ShuOsherTableau& tableau) {
  system.begin_step(u, t);
  std::vector<Eigen::VectorXd> stage{u};
  std::vector<Eigen::VectorXd> rate;
  std::vector<double> time{t};
  for (std::size_t s = 0; s < tableau.gamma.size(); ++s) {
    Eigen::VectorXd next = Eigen::VectorXd::Zero(u.size());
    double c = 0.0;
    for (std::size_t j = 0; j < tableau.gamma[s].size(); ++j) {
      const double g = tableau.gamma[s][j];
      const double m = tableau.mu[s][j];
      if (g != 0.0) next += g * stage[j];
      if (m != 0.0) {
        while (rate.size() <= j) {
          const std::size_t idx = rate.size();
          rate.push_back(system.solve_mass(system.residual(stage[idx], time[idx])));
        }
        next += dt * m * rate[j];
      }
      c += g * (time[j] - t) + m * dt;
    }
    system.constrain(next, t + c);
    check_finite(next);
    stage.push_back(std::move(next));
    time.push_back(t + c);
  }
  return stage.back();
}

Eigen::VectorXd dec_step(OdeSystem& system, const Eigen::VectorXd& u, double t, double dt,
                         const DeCConfig& config) {
  system.begin_step(u, t);
  const Eigen::VectorXd& d = system.lumped_mass();
  if ((d.array() <= 0.0).any())
    throw Error(ErrorKind::NonPositiveLumpedMass, "DeC requires a positive lumped mass");
  const int M = config.M;
  std::vector<double> times{t};
  for (double b : config.beta) times.push_back(t + b * dt);

  std::vector<Eigen::VectorXd> cur(M + 1, u);
  for (int m = 1; m <= M; ++m) system.constrain(cur[m], times[m]);
  std::vector<Eigen::VectorXd> rates(M + 1);
  rates[0] = system.residual(u, t).cwiseQuotient(d);
  for (int k = 0; k < config.K; ++k) {
    for (int z = 1; z <= M; ++z) rates[z] = system.residual(cur[z], times[z]).cwiseQuotient(d);
    std::vector<Eigen::VectorXd> next(M + 1);
    next[0] = u;
    for (int m = 1; m <= M; ++m) {
      Eigen::VectorXd v = cur[m] - system.apply_mass(cur[m] - u).cwiseQuotient(d);
      for (int z = 0; z <= M; ++z) {
        const double rho = config.rho[m - 1][z];
        if (rho != 0.0) v += dt * rho * rates[z];
      }
      system.constrain(v, times[m]);
      check_finite(v);
      next[m] = std::move(v);
    }
    cur = std::move(next);
  }
  return cur[M];
}

Eigen::VectorXd step(OdeSystem& system, const Eigen::VectorXd& u, double t, double dt,
                     const TimeScheme& scheme) {
  switch (scheme.kind) {
    case SchemeKind::RK: return rk_step(system, u, t, dt, scheme.rk);
    case SchemeKind::SSPRK: return ssprk_step(system, u, t, dt, scheme.ssprk);
    case SchemeKind::DeC: return dec_step(system, u, t, dt, scheme.dec);
  }
  return u;
}

}  // namespace stabcg
