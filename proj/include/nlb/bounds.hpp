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

#pragma once

#include <array>
#include <string>

#include "nlb/core.hpp"
#include "nlb/distance.hpp"

namespace nlb {

/** Saturation tolerance for analytically constructed fixtures. */
inline constexpr double kSaturationTolAnalytic = 1e-9;
/** Saturation tolerance for optimizer-produced realizations. */
inline constexpr double kSaturationTolOptimizer = 1e-6;

/**
 * Weights of the correlator-inequality families: t_y and s_x for the
 * two-term form, u_xy for the general form (subject to u00*u01 == u10*u11
 * when u_constrained is set).
 */
struct WeightSet {
  std::array<double, 2> t{1.0, 1.0};
  std::array<double, 2> s{1.0, 1.0};
  std::array<std::array<double, 2>, 2> u{{{1.0, 1.0}, {1.0, 1.0}}};
  bool u_constrained = true;
};

enum class Inequality {
  Tsirelson2,
  ICtype4,
  WeightedCHSH5,
  ExtendedLandau6,
  ClassicLandau,
  NPAtypeB4,
  TiltedB1,
};

const char* inequality_name(Inequality name);

struct InequalityReport {
  Inequality name = Inequality::Tsirelson2;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;  // rhs - lhs
  bool saturated = false;
  std::string inputs_digest;
};

/**
 * Two-term bound: sum_y t_y E_y <= sqrt(2 (t0^2 + t1^2)(s0^2 dt0^2 + s1^2 dt1^2))
 * with E_y = s0 C_0y + s1 (-1)^y C_1y. The profile must hold Bob-state
 * distances indexed by Alice's setting (side == Bob).
 */
InequalityReport tsirelson_bound(const Correlators& corr, const DistanceProfile& prof,
                                 const WeightSet& w,
                                 double saturation_tol = kSaturationTolAnalytic);

/** Quarter-circle envelope form: E0^2 + E1^2 <= (dt0^2 + dt1^2) / 2. */
InequalityReport ic_type_check(const Correlators& corr, const DistanceProfile& prof,
                               double saturation_tol = kSaturationTolAnalytic);

/**
 * General-weight bound: sum_xy s_x u_xy (-1)^{xy} C_xy <=
 * sqrt(sum u^2) sqrt(sum_x s_x^2 dt_x^2); requires u00*u01 == u10*u11.
 */
InequalityReport weighted_chsh_check(const Correlators& corr, const DistanceProfile& prof,
                                     const WeightSet& w,
                                     double saturation_tol = kSaturationTolAnalytic);

/**
 * Landau-form criterion on the distance-normalized correlators
 * Ct_xy = C_xy / dt_x; rows with dt_x below 1e-12 are zeroed.
 */
InequalityReport extended_landau_margin(const Correlators& corr, const DistanceProfile& prof,
                                        double saturation_tol = kSaturationTolAnalytic);

/** The dt == 1 specialization of extended_landau_margin. */
InequalityReport classic_landau_margin(const Correlators& corr,
                                       double saturation_tol = kSaturationTolAnalytic);

/**
 * Landau-form criterion on the moment-normalized correlators
 * (C_xy - <A_x><B_y>) / (sqrt(dt_x^2 - <A_x>^2) sqrt(1 - <B_y>^2)).
 * Throws DegenerateMarginals when a normalizer degenerates.
 */
InequalityReport npa_type_margin(const Correlators& corr, const DistanceProfile& prof,
                                 double saturation_tol = kSaturationTolAnalytic);

/**
 * Tilted general-weight bound with observables A_x + eps_x I; the right-hand
 * side uses (dt_x^eps)^2 = dt_x^2 + 2 eps_x <A_x> + eps_x^2.
 */
InequalityReport tilted_bound_check(const Correlators& corr, const DistanceProfile& prof,
                                    const WeightSet& w, const std::array<double, 2>& eps,
                                    double saturation_tol = kSaturationTolAnalytic);

}  // namespace nlb
