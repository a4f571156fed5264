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
#include <cstdint>
#include <optional>
#include <utility>

#include "nlb/core.hpp"

namespace nlb {

/**
 * Distance data of one party's conditional states, indexed by the other
 * party's setting. dtilde_eps is present only when tilt parameters were
 * supplied.
 */
struct DistanceProfile {
  Side side = Side::Bob;
  std::array<double, 2> dbar{};
  std::array<double, 2> dtilde{};
  std::optional<std::array<double, 2>> dtilde_eps;
};

/**
 * Generalized trace distance tr|rho - sigma| for subnormalized states.
 * Requires tr(rho + sigma) == 1 within 1e-10; throws NormalizationError
 * otherwise.
 */
double dbar(const DensityMatrix& rho, const DensityMatrix& sigma);

/**
 * The distance-like maximum of tr X(rho - sigma) / sqrt(tr X^2 (rho + sigma))
 * over Hermitian X, evaluated in closed form in the eigenbasis of
 * rho + sigma:
 *
 *   sqrt( sum_ij 2 |<i|rho - sigma|j>|^2 / (lambda_i + lambda_j) ).
 *
 * Eigenvalue pairs with lambda_i + lambda_j <= 1e-12 are dropped; if a
 * dropped pair carries numerator weight above 1e-8 the inputs are
 * inconsistent and SupportViolation is thrown. The result is clamped into
 * [0, 1]; an overshoot beyond 1e-9 indicates a bug and throws.
 */
double dtilde_closed_form(const DensityMatrix& rho, const DensityMatrix& sigma);

struct MaximizeDiagnostics {
  double best = 0.0;
  double second_best = 0.0;
  int restarts = 0;
  std::uint64_t seed = 0;
  std::size_t evals = 0;
};

/**
 * Direct numerical maximization over Hermitian X by multi-start simplex
 * ascent on the real coordinates of X in the eigenbasis of rho + sigma.
 * Serves as the independent oracle for dtilde_closed_form. Throws
 * ConvergenceFailure if the two best restarts disagree by more than 1e-6.
 */
std::pair<double, MaximizeDiagnostics> dtilde_maximize(const DensityMatrix& rho,
                                                       const DensityMatrix& sigma,
                                                       int restarts = 64,
                                                       std::uint64_t seed = 1);

/**
 * Tilted variant: sqrt(dtilde^2 + 2 eps tr(rho - sigma) + eps^2).
 * Cross-checked internally against the closed form applied to the numerator
 * (1 + eps) rho - (1 - eps) sigma; the two routes must agree within 1e-10.
 */
double dtilde_eps(const DensityMatrix& rho, const DensityMatrix& sigma, double eps);

/**
 * Assembles the per-setting profile of one party's conditional states.
 * side == Bob means Bob's states conditioned on Alice's setting x.
 */
DistanceProfile distance_profile(const GeneralRealization& r, Side side,
                                 std::optional<std::array<double, 2>> eps = std::nullopt);

namespace detail {

/** Closed form without the normalization precondition (used by scaling tests). */
double dtilde_closed_form_raw(const CMatrix& rho, const CMatrix& sigma);

}  // namespace detail

}  // namespace nlb
