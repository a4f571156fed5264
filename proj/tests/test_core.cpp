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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "nlb/core.hpp"
#include "nlb/errors.hpp"
#include "test_util.hpp"

using namespace nlb;
using namespace nlb::testing;

TEST_CASE("maximally entangled geometry reaches the CHSH quantum maximum") {
  const GeneralRealization r = build_realization(kPi / 4.0, 0.0, kPi / 2.0, kPi / 4.0,
                                                 -kPi / 4.0);
  for (const auto& obs : r.alice_obs)
    CHECK((obs * obs).max_abs_diff(CMatrix::identity(2)) <= 1e-12);
  const auto [behavior, corr] = evaluate_behavior(r);
  const double chsh = corr.C[0][0] + corr.C[0][1] + corr.C[1][0] - corr.C[1][1];
  CHECK(chsh == doctest::Approx(2.8284271247461903).epsilon(1e-12));
}

TEST_CASE("boundary realization reproduces the reference correlator table") {
  const auto [behavior, corr] = evaluate_behavior(to_general(boundary_realization()));
  CHECK(corr.mA[0] == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(corr.mA[1] == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(corr.mB[0] == doctest::Approx(kMB).epsilon(1e-12));
  CHECK(corr.mB[1] == doctest::Approx(kMB).epsilon(1e-12));
  CHECK(corr.C[0][0] == doctest::Approx(kC0).epsilon(1e-12));
  CHECK(corr.C[0][1] == doctest::Approx(kC0).epsilon(1e-12));
  CHECK(corr.C[1][0] == doctest::Approx(kC1).epsilon(1e-12));
  CHECK(corr.C[1][1] == doctest::Approx(-kC1).epsilon(1e-12));
}

TEST_CASE("product state factorizes") {
  const GeneralRealization r = build_realization(0.0, 0.7, -1.3, 0.4, 2.0);
  const auto [behavior, corr] = evaluate_behavior(r);
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      CHECK(corr.C[x][y] == doctest::Approx(corr.mA[x] * corr.mB[y]).epsilon(1e-12));
}

TEST_CASE("maximally mixed state gives the uniform behavior") {
  GeneralRealization r;
  r.dim_a = r.dim_b = 2;
  r.state = CMatrix::identity(4);
  r.state *= 0.25;
  r.alice_obs = {pauli(3), pauli(1)};
  r.bob_obs = {pauli(3), pauli(1)};
  const auto [behavior, corr] = evaluate_behavior(r);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
          CHECK(behavior.p[a][b][x][y] == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("evaluate_behavior rejects broken observables") {
  GeneralRealization r = to_general(boundary_realization());
  r.alice_obs[0] *= 0.9;
  CHECK_THROWS_AS(evaluate_behavior(r), InvalidObservable);
}

TEST_CASE("boundary conditional states at x = 0 are the orthogonal pair") {
  const auto [rho0, rho1] = bob_conditional_states(to_general(boundary_realization()), 0);
  CHECK(rho0.trace() == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(rho1.trace() == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(std::abs(rho0.mat()(0, 0).real() - 2.0 / 3.0) <= 1e-12);
  CHECK(std::abs(rho0.mat()(1, 1).real()) <= 1e-12);
  CHECK(std::abs(rho1.mat()(1, 1).real() - 1.0 / 3.0) <= 1e-12);
  // Orthogonality: rho0 * rho1 = 0.
  CHECK((rho0.mat() * rho1.mat()).max_abs() <= 1e-12);
}

TEST_CASE("boundary conditional states at x = 1 are nonorthogonal pure halves") {
  const auto [rho0, rho1] = bob_conditional_states(to_general(boundary_realization()), 1);
  CHECK(rho0.trace() == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(rho1.trace() == doctest::Approx(0.5).epsilon(1e-12));
  // Purity of the renormalized states: tr(rho^2) = tr(rho)^2 for rank 1.
  CHECK((rho0.mat() * rho0.mat()).trace().real() == doctest::Approx(0.25).epsilon(1e-12));
  CHECK((rho0.mat() * rho1.mat()).trace().real() > 1e-3);  // overlap, not orthogonal
}

TEST_CASE("product state steering collapses to a single ray") {
  const GeneralRealization r = build_realization(0.0, 0.9, -0.2, 0.3, 1.1);
  const auto [behavior, corr] = evaluate_behavior(r);
  for (int x = 0; x < 2; ++x) {
    const auto [rho0, rho1] = bob_conditional_states(r, x);
    const CMatrix diff = rho0.mat() - rho1.mat();
    CHECK(diff.trace().real() == doctest::Approx(corr.mA[x]).epsilon(1e-12));
    // Both conditional states proportional to |0><0|.
    CHECK(std::abs(rho0.mat()(1, 1)) <= 1e-12);
    CHECK(std::abs(rho1.mat()(1, 1)) <= 1e-12);
  }
}

TEST_CASE("behavior invariants hold for random realizations") {
  Rng rng(21);
  for (int trial = 0; trial < 200; ++trial) {
    const TwoQubitRealization r = random_realization(rng);
    const GeneralRealization g = to_general(r);
    const auto [behavior, corr] = evaluate_behavior(g);  // validates internally

    // Conditional-state traces against the marginals.
    for (int x = 0; x < 2; ++x) {
      const auto [rho0, rho1] = bob_conditional_states(g, x);
      CHECK(rho0.trace() + rho1.trace() == doctest::Approx(1.0).epsilon(1e-10));
      CHECK((rho0.mat() - rho1.mat()).trace().real() ==
            doctest::Approx(corr.mA[x]).epsilon(1e-10));
    }

    // Correlators from the behavior equal the direct operator expectations.
    for (int x = 0; x < 2; ++x)
      for (int y = 0; y < 2; ++y) {
        const double direct =
            trace_product(kron(g.alice_obs[x], g.bob_obs[y]), g.state).real();
        CHECK(corr.C[x][y] == doctest::Approx(direct).epsilon(1e-10));
      }

    // Closed trigonometric form agrees with the matrix route.
    const Correlators fast = correlators_analytic(r);
    for (int x = 0; x < 2; ++x) {
      CHECK(fast.mA[x] == doctest::Approx(corr.mA[x]).epsilon(1e-12));
      CHECK(fast.mB[x] == doctest::Approx(corr.mB[x]).epsilon(1e-12));
      for (int y = 0; y < 2; ++y)
        CHECK(fast.C[x][y] == doctest::Approx(corr.C[x][y]).epsilon(1e-12));
    }
  }
}

TEST_CASE("canonicalize maps arbitrary parameters into the domain, preserving behavior") {
  Rng rng(33);
  for (int trial = 0; trial < 200; ++trial) {
    const double theta = rng.uniform(-8.0, 8.0);
    const std::array<double, 2> aa{rng.uniform(-8.0, 8.0), rng.uniform(-8.0, 8.0)};
    const std::array<double, 2> ba{rng.uniform(-8.0, 8.0), rng.uniform(-8.0, 8.0)};
    const TwoQubitRealization canon = canonicalize(theta, aa, ba);

    CHECK(canon.schmidt_angle >= 0.0);
    CHECK(canon.schmidt_angle <= kPi / 4.0 + 1e-12);
    for (const double a : canon.alice_angles) CHECK(std::abs(a) <= kPi + 1e-12);

    TwoQubitRealization raw;
    raw.schmidt_angle = theta;
    raw.alice_angles = aa;
    raw.bob_angles = ba;
    const Correlators before = correlators_analytic(raw);
    const Correlators after = correlators_analytic(canon);
    for (int x = 0; x < 2; ++x) {
      CHECK(after.mA[x] == doctest::Approx(before.mA[x]).epsilon(1e-11));
      CHECK(after.mB[x] == doctest::Approx(before.mB[x]).epsilon(1e-11));
      for (int y = 0; y < 2; ++y)
        CHECK(after.C[x][y] == doctest::Approx(before.C[x][y]).epsilon(1e-11));
    }
  }
}

TEST_CASE("density matrix factory rejects invalid inputs") {
  CMatrix negative(2);
  negative(0, 0) = 0.5;
  negative(1, 1) = -0.5;
  CHECK_THROWS_AS(DensityMatrix::checked(negative), DomainError);

  CMatrix overweight = CMatrix::identity(2);
  CHECK_THROWS_AS(DensityMatrix::checked(overweight), DomainError);

  CMatrix nonhermitian(2);
  nonhermitian(0, 1) = 0.5;
  CHECK_THROWS_AS(DensityMatrix::checked(nonhermitian), DomainError);
}
