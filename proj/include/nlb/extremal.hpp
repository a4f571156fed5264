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
#include <optional>
#include <span>
#include <vector>

#include "nlb/bounds.hpp"
#include "nlb/core.hpp"
#include "nlb/distance.hpp"

namespace nlb {

/**
 * Reduction of one party's observables onto the other party's Bloch plane:
 * tr_other((obs_x (x) I) rho) = alpha_x I + beta_x (cos phi_x sigma_1 +
 * sin phi_x sigma_3).
 */
struct LocalBloch {
  Side side = Side::Bob;
  std::array<double, 2> alpha{};
  std::array<double, 2> beta{};  // >= 0
  std::array<double, 2> phi{};   // (-pi, pi]
};

/**
 * Outcome of the quadruple-sine saturation test
 * sin(phi_0 - t_0) sin(phi_0 - t_1) sin(phi_1 - t_0) sin(phi_1 - t_1) <= 0,
 * with the aligned weights u when the condition holds.
 */
struct SaturationVerdict {
  double product_value = 0.0;
  bool satisfied = false;
  std::optional<std::array<double, 4>> u_weights;  // u00, u01, u10, u11
};

/** Weights that saturate the general-weight bound for an extremal realization. */
struct SaturatingWeights {
  std::array<std::array<double, 2>, 2> u{};
  std::array<double, 2> s{};
};

/** Extracts the Bloch data of the given side; throws NonRealSymmetric if a
 *  sigma_2 component survives. */
LocalBloch extract_local_bloch(const TwoQubitRealization& r, Side side);

/**
 * Evaluates the sine-product condition of the bloch angles against the
 * partner's measurement angles and, when satisfiable, solves the aligned
 * weights normalized to u00 = 1. Throws DegenerateAngles when a sine factor
 * vanishes within 1e-12.
 */
SaturationVerdict saturation_condition(const LocalBloch& bloch,
                                       const std::array<double, 2>& partner_angles,
                                       double tol = 1e-9);

/**
 * Same test, but degenerate angle configurations yield a verdict without
 * weights instead of throwing. Used on optimizer output, where classical
 * optima routinely align the steering direction with a measurement axis.
 */
SaturationVerdict saturation_condition_lenient(const LocalBloch& bloch,
                                               const std::array<double, 2>& partner_angles,
                                               double tol = 1e-9);

struct TiltedFamilyPoint {
  TwoQubitRealization realization;
  Correlators expected;
  std::array<double, 2> expected_dtilde{};
};

/**
 * Analytic maximal-violation realization of the alpha-weighted tilted
 * correlator family at Schmidt angle theta: A_0 = sigma_3, A_1 = sigma_1,
 * Bob angles solved from sin t^B_y = alpha / sqrt(sin^2 2theta + alpha^2).
 * Requires alpha > 0 and theta in (0, pi/4].
 */
TiltedFamilyPoint tilted_family(double alpha, double theta);

/** The boundary example with biased marginals: tilted_family at alpha = 1,
 *  cos(theta) = sqrt(2/3). */
TiltedFamilyPoint boundary_example();

/** Entrywise mixture lambda * b + (1 - lambda) * uniform. */
Behavior mix_with_noise(const Behavior& b, double lambda);

/**
 * Explicit 8 (x) 8 realization of the noise mixture: the base state,
 * a maximally mixed qubit pair, and a classically correlated flag pair that
 * switches both parties between measuring the base system and the mixed one.
 */
GeneralRealization realize_mixture(const TwoQubitRealization& r, double lambda);

struct MixingRow {
  double lambda = 0.0;
  int x = 0;
  double dtilde_measured = 0.0;
  double dtilde_paper_linear = 0.0;  // lambda * dtilde of the base realization
  double dtilde_blockform = 0.0;     // sqrt(lambda) * dtilde of the base realization
  double landau_margin = 0.0;
};

/**
 * Tabulates, for each lambda, the measured dtilde of the explicit mixture
 * realization against the two candidate mixing laws, plus the Landau-form
 * margin of the mixed behavior. The block-form column is the one consistent
 * with the closed form; the linear column is reported for comparison only.
 */
std::vector<MixingRow> mixing_experiment(const TwoQubitRealization& r,
                                         std::span<const double> lambdas);

/**
 * Solves the aligned weights u from the Bob-side verdict and the matching
 * s_x = sqrt(tr X_x^2 rho_B) / dtilde_x (normalized to max 1); the
 * general-weight bound saturates with these for every realization passing
 * the saturation condition.
 */
SaturatingWeights saturating_weights(const TwoQubitRealization& r);

}  // namespace nlb
