// Copyright 2026 The nonlocal-bounds developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "nlb/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>

#include "nlb/errors.hpp"

namespace nlb {

namespace {

constexpr double kDegenerateDtilde = 1e-12;
constexpr double kClampGuard = 1e-9;

std::string format_digest(const char* fmt_head, const std::array<double, 2>& dt) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), "%s,\"dtilde\":[%.17g,%.17g]}", fmt_head, dt[0], dt[1]);
  return buf;
}

InequalityReport make_report(Inequality name, double lhs, double rhs, double sat_tol,
                             std::string digest) {
  InequalityReport rep;
  rep.name = name;
  rep.lhs = lhs;
  rep.rhs = rhs;
  rep.margin = rhs - lhs;
  rep.saturated = std::abs(rep.margin) <= sat_tol;
  rep.inputs_digest = std::move(digest);
  return rep;
}

/** Clamps a normalized correlator into [-1, 1]; beyond the guard it is a bug. */
double clamp_unit(double value, const char* label) {
  if (std::abs(value) > 1.0 + kClampGuard)
    throw std::logic_error(std::string(label) + ": normalized correlator " +
                           std::to_string(value) + " exceeds 1 beyond the guard");
  return std::clamp(value, -1.0, 1.0);
}

double landau_lhs(const std::array<std::array<double, 2>, 2>& ct) {
  return std::abs(ct[0][0] * ct[0][1] - ct[1][0] * ct[1][1]);
}

double landau_rhs(const std::array<std::array<double, 2>, 2>& ct) {
  return std::sqrt((1.0 - ct[0][0] * ct[0][0]) * (1.0 - ct[0][1] * ct[0][1])) +
         std::sqrt((1.0 - ct[1][0] * ct[1][0]) * (1.0 - ct[1][1] * ct[1][1]));
}

void check_u_constraint(const WeightSet& w) {
  if (!w.u_constrained)
    throw WeightConstraintViolation("weight set does not carry the u constraint flag");
  const double lhs = w.u[0][0] * w.u[0][1];
  const double rhs = w.u[1][0] * w.u[1][1];
  if (std::abs(lhs - rhs) > 1e-10)
    throw WeightConstraintViolation("u00*u01 != u10*u11 (difference " +
                                    std::to_string(lhs - rhs) + ")");
}

}  // namespace

const char* inequality_name(Inequality name) {
  switch (name) {
    case Inequality::Tsirelson2: return "Tsirelson2";
    case Inequality::ICtype4: return "ICtype4";
    case Inequality::WeightedCHSH5: return "WeightedCHSH5";
    case Inequality::ExtendedLandau6: return "ExtendedLandau6";
    case Inequality::ClassicLandau: return "ClassicLandau";
    case Inequality::NPAtypeB4: return "NPAtypeB4";
    case Inequality::TiltedB1: return "TiltedB1";
  }
  return "?";
}

InequalityReport tsirelson_bound(const Correlators& corr, const DistanceProfile& prof,
                                 const WeightSet& w, double saturation_tol) {
  const auto& dt = prof.dtilde;
  double lhs = 0.0;
  for (int y = 0; y < 2; ++y) {
    const double ey = w.s[0] * corr.C[0][y] + w.s[1] * (y ? -1.0 : 1.0) * corr.C[1][y];
    lhs += w.t[y] * ey;
  }
  const double rhs = std::sqrt(2.0 * (w.t[0] * w.t[0] + w.t[1] * w.t[1]) *
                               (w.s[0] * w.s[0] * dt[0] * dt[0] +
                                w.s[1] * w.s[1] * dt[1] * dt[1]));
  char head[160];
  std::snprintf(head, sizeof(head), "{\"t\":[%.17g,%.17g],\"s\":[%.17g,%.17g]", w.t[0], w.t[1],
                w.s[0], w.s[1]);
  return make_report(Inequality::Tsirelson2, lhs, rhs, saturation_tol, format_digest(head, dt));
}

InequalityReport ic_type_check(const Correlators& corr, const DistanceProfile& prof,
                               double saturation_tol) {
  const auto& dt = prof.dtilde;
  double lhs = 0.0;
  for (int y = 0; y < 2; ++y) {
    const double ey = 0.5 * (corr.C[0][y] + (y ? -1.0 : 1.0) * corr.C[1][y]);
    lhs += ey * ey;
  }
  const double rhs = 0.5 * (dt[0] * dt[0] + dt[1] * dt[1]);
  return make_report(Inequality::ICtype4, lhs, rhs, saturation_tol,
                     format_digest("{\"s\":[0.5,0.5]", dt));
}

InequalityReport weighted_chsh_check(const Correlators& corr, const DistanceProfile& prof,
                                     const WeightSet& w, double saturation_tol) {
  check_u_constraint(w);
  const auto& dt = prof.dtilde;
  double lhs = 0.0, u_sq = 0.0, s_dt_sq = 0.0;
  for (int x = 0; x < 2; ++x) {
    for (int y = 0; y < 2; ++y) {
      lhs += w.s[x] * w.u[x][y] * ((x & y) ? -1.0 : 1.0) * corr.C[x][y];
      u_sq += w.u[x][y] * w.u[x][y];
    }
    s_dt_sq += w.s[x] * w.s[x] * dt[x] * dt[x];
  }
  const double rhs = std::sqrt(u_sq) * std::sqrt(s_dt_sq);
  char head[256];
  std::snprintf(head, sizeof(head),
                "{\"s\":[%.17g,%.17g],\"u\":[[%.17g,%.17g],[%.17g,%.17g]]", w.s[0], w.s[1],
                w.u[0][0], w.u[0][1], w.u[1][0], w.u[1][1]);
  return make_report(Inequality::WeightedCHSH5, lhs, rhs, saturation_tol,
                     format_digest(head, dt));
}

InequalityReport extended_landau_margin(const Correlators& corr, const DistanceProfile& prof,
                                        double saturation_tol) {
  const auto& dt = prof.dtilde;
  std::array<std::array<double, 2>, 2> ct{};
  for (int x = 0; x < 2; ++x) {
    for (int y = 0; y < 2; ++y)
      if (std::abs(corr.C[x][y]) > dt[x] + 1e-8)
        throw DomainError("extended_landau: |C_xy| exceeds dtilde_x");
    if (dt[x] <= kDegenerateDtilde) {
      ct[x] = {0.0, 0.0};  // degenerate row dictated by dt >= |C|
      continue;
    }
    for (int y = 0; y < 2; ++y)
      ct[x][y] = clamp_unit(corr.C[x][y] / dt[x], "extended_landau");
  }
  return make_report(Inequality::ExtendedLandau6, landau_lhs(ct), landau_rhs(ct),
                     saturation_tol, format_digest("{\"normalization\":\"dtilde\"", dt));
}

InequalityReport classic_landau_margin(const Correlators& corr, double saturation_tol) {
  DistanceProfile unit;
  unit.dtilde = {1.0, 1.0};
  unit.dbar = {1.0, 1.0};
  InequalityReport rep = extended_landau_margin(corr, unit, saturation_tol);
  rep.name = Inequality::ClassicLandau;
  return rep;
}

InequalityReport npa_type_margin(const Correlators& corr, const DistanceProfile& prof,
                                 double saturation_tol) {
  const auto& dt = prof.dtilde;
  std::array<std::array<double, 2>, 2> ct{};
  for (int x = 0; x < 2; ++x) {
    const double var_a = dt[x] * dt[x] - corr.mA[x] * corr.mA[x];
    if (var_a <= 1e-12)
      throw DegenerateMarginals("npa_type: dtilde_x^2 - <A_x>^2 not positive");
    for (int y = 0; y < 2; ++y) {
      const double var_b = 1.0 - corr.mB[y] * corr.mB[y];
      if (var_b <= 1e-12) throw DegenerateMarginals("npa_type: <B_y>^2 too close to 1");
      ct[x][y] = clamp_unit(
          (corr.C[x][y] - corr.mA[x] * corr.mB[y]) / (std::sqrt(var_a) * std::sqrt(var_b)),
          "npa_type");
    }
  }
  char head[160];
  std::snprintf(head, sizeof(head), "{\"mA\":[%.17g,%.17g],\"mB\":[%.17g,%.17g]", corr.mA[0],
                corr.mA[1], corr.mB[0], corr.mB[1]);
  return make_report(Inequality::NPAtypeB4, landau_lhs(ct), landau_rhs(ct), saturation_tol,
                     format_digest(head, dt));
}

InequalityReport tilted_bound_check(const Correlators& corr, const DistanceProfile& prof,
                                    const WeightSet& w, const std::array<double, 2>& eps,
                                    double saturation_tol) {
  check_u_constraint(w);
  const auto& dt = prof.dtilde;
  double lhs = 0.0, u_sq = 0.0, rhs_sq = 0.0;
  for (int x = 0; x < 2; ++x) {
    for (int y = 0; y < 2; ++y) {
      // <(A_x + eps_x I) (x) B_y> = C_xy + eps_x <B_y>
      lhs += w.s[x] * w.u[x][y] * ((x & y) ? -1.0 : 1.0) * (corr.C[x][y] + eps[x] * corr.mB[y]);
      u_sq += w.u[x][y] * w.u[x][y];
    }
    const double dt_eps_sq = dt[x] * dt[x] + 2.0 * eps[x] * corr.mA[x] + eps[x] * eps[x];
    rhs_sq += w.s[x] * w.s[x] * dt_eps_sq;
  }
  const double rhs = std::sqrt(u_sq) * std::sqrt(rhs_sq);
  char head[256];
  std::snprintf(head, sizeof(head),
                "{\"eps\":[%.17g,%.17g],\"u\":[[%.17g,%.17g],[%.17g,%.17g]]", eps[0], eps[1],
                w.u[0][0], w.u[0][1], w.u[1][0], w.u[1][1]);
  return make_report(Inequality::TiltedB1, lhs, rhs, saturation_tol, format_digest(head, dt));
}

}  // namespace nlb
