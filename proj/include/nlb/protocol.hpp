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
#include <vector>

#include "nlb/core.hpp"

namespace nlb {

/**
 * Per-box data of the n-box parity protocol: success biases E_y at equal
 * input weights, the two distance quantities of Bob's conditional states,
 * Alice's outcome marginals, and the marginals of Bob's optimal per-box
 * guess.
 */
struct BoxModel {
  TwoQubitRealization realization;
  std::array<double, 2> E{};       // (C_0y + (-1)^y C_1y) / 2
  std::array<double, 2> dbar{};
  std::array<double, 2> dtilde{};
  std::array<double, 2> pA0{};     // p(a = 0 | x)
  std::array<double, 2> pG0{};     // P(guess = 0 | x)
};

struct ParityProtocolReport {
  int n = 0;
  double lhs = 0.0;   // (E_0^2 + E_1^2)^n
  double rhs = 0.0;   // ((dt_0^2 + dt_1^2) / 2)^n
  double info_exact = 0.0;
  double info_asymptotic = 0.0;
  bool asymptotic_valid = false;  // |2 p(0|x) - 1| < dbar_x < 1 for both x
};

BoxModel box_model(const TwoQubitRealization& r);

/** Bias part of the protocol bound; valid for 1 <= n <= 64. */
ParityProtocolReport parity_bound(const BoxModel& box, int n);

/**
 * Joint distribution P(a, g) of Alice's outcome and Bob's optimal guess:
 * g is the projective measurement onto the positive/negative eigenspaces of
 * rho_0 - rho_1; on the null space the guess is a fair coin, which makes the
 * degenerate rho_0 == rho_1 case a uniform guess. P(a = g) always equals
 * (1 + dbar) / 2.
 */
std::array<std::array<double, 2>, 2> helstrom_joint(const DensityMatrix& rho0,
                                                    const DensityMatrix& rho1);

/** Box-level wrapper for the conditional states at Alice's setting x. */
std::array<std::array<double, 2>, 2> helstrom_joint(const BoxModel& box, int x);

/**
 * 1 - H(a_p | b_p) of the parity bits under the per-box guessing strategy,
 * exact binomial sum in bits; valid for 1 <= n <= 40.
 */
double parity_info_exact(const BoxModel& box, int n);

/** Large-n approximation (1 / (2 ln 2)) ((dbar_0^2 + dbar_1^2) / 2)^n. */
double parity_info_asymptotic(const BoxModel& box, int n);

/** Full rows for n = 1..n_max, ready for CSV emission. */
std::vector<ParityProtocolReport> protocol_sweep(const BoxModel& box, int n_max);

}  // namespace nlb
