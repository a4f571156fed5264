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
#include <cstddef>
#include <utility>

#include "nlb/matrix.hpp"

namespace nlb {

enum class Side { Alice, Bob };

/**
 * Subnormalized quantum state: Hermitian within 1e-12, eigenvalues above
 * -1e-10, trace in [0, 1 + 1e-12]. The checked factory enforces all three.
 */
class DensityMatrix {
 public:
  explicit DensityMatrix(CMatrix m) : mat_(std::move(m)) {}

  /** Validates the invariants and throws DomainError on failure. */
  static DensityMatrix checked(CMatrix m);

  const CMatrix& mat() const { return mat_; }
  std::size_t dim() const { return mat_.dim(); }
  double trace() const { return mat_.trace().real(); }

 private:
  CMatrix mat_;
};

/**
 * Pure partially entangled two-qubit scenario: the state
 * cos(theta)|00> + sin(theta)|11> with each party measuring
 * cos(angle) sigma_1 + sin(angle) sigma_3.
 */
struct TwoQubitRealization {
  double schmidt_angle = 0.0;  // radians in [0, pi/4]
  std::array<double, 2> alice_angles{};
  std::array<double, 2> bob_angles{};
};

/** Shared state plus one +-1-valued observable per party per setting. */
struct GeneralRealization {
  std::size_t dim_a = 0;
  std::size_t dim_b = 0;
  CMatrix state;
  std::array<CMatrix, 2> alice_obs;
  std::array<CMatrix, 2> bob_obs;
};

/** Conditional probabilities p(ab|xy), indexed p[a][b][x][y]. */
struct Behavior {
  double p[2][2][2][2] = {};
};

struct Correlators {
  double C[2][2] = {};         // <A_x (x) B_y>
  std::array<double, 2> mA{};  // <A_x>
  std::array<double, 2> mB{};  // <B_y>
};

/** Builds the two-qubit realization in matrix form. */
GeneralRealization build_realization(double schmidt_angle, double alice_angle0,
                                     double alice_angle1, double bob_angle0, double bob_angle1);

GeneralRealization to_general(const TwoQubitRealization& r);

/**
 * Checks observable involutions (throws InvalidObservable past 1e-10) and
 * computes p(ab|xy) = tr[(P_{a|x} (x) Q_{b|y}) rho] together with the derived
 * correlators.
 */
std::pair<Behavior, Correlators> evaluate_behavior(const GeneralRealization& r);

/** Correlators of a two-qubit realization by the closed trigonometric form. */
Correlators correlators_analytic(const TwoQubitRealization& r);

/** Swaps the roles of the two parties (transposes C, exchanges mA and mB). */
Correlators transpose_correlators(const Correlators& c);

/**
 * Bob's subnormalized conditional states (rho_{0|x}, rho_{1|x}) given
 * Alice's setting x.
 */
std::pair<DensityMatrix, DensityMatrix> bob_conditional_states(const GeneralRealization& r,
                                                               int x);

/** Alice's subnormalized conditional states given Bob's setting y. */
std::pair<DensityMatrix, DensityMatrix> alice_conditional_states(const GeneralRealization& r,
                                                                 int y);

/** Correlators derived from a behavior table. */
Correlators correlators_of(const Behavior& b);

/**
 * Validates entry range, normalization, and no-signaling; throws DomainError
 * with the failing condition named.
 */
void validate_behavior(const Behavior& b);

/**
 * Remaps an arbitrary angle tuple onto the canonical domain
 * (schmidt angle in [0, pi/4], observable angles in (-pi, pi]) using the
 * symmetries of the state family; the behavior is preserved exactly.
 */
TwoQubitRealization canonicalize(double schmidt_angle, const std::array<double, 2>& alice_angles,
                                 const std::array<double, 2>& bob_angles);

}  // namespace nlb
