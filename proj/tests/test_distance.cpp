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

#include "nlb/distance.hpp"
#include "nlb/errors.hpp"
#include "nlb/extremal.hpp"
#include "test_util.hpp"

using namespace nlb;
using namespace nlb::testing;

namespace {

DensityMatrix dm(const CMatrix& m) { return DensityMatrix::checked(m); }

std::pair<DensityMatrix, DensityMatrix> half_mixed_half_pure() {
  CMatrix rho = CMatrix::identity(2);
  rho *= 0.25;  // (1/2) * I/2
  CMatrix sigma(2);
  sigma(0, 0) = 0.5;  // (1/2) |0><0|
  return {dm(rho), dm(sigma)};
}

}  // namespace

TEST_CASE("dbar fixtures") {
  SUBCASE("orthogonal half-weight projectors") {
    CMatrix rho(2), sigma(2);
    rho(0, 0) = 0.5;
    sigma(1, 1) = 0.5;
    CHECK(dbar(dm(rho), dm(sigma)) == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("boundary pair at x = 1") {
    const auto [rho0, rho1] =
        bob_conditional_states(to_general(boundary_realization()), 1);
    CHECK(dbar(rho0, rho1) == doctest::Approx(kDtilde1).epsilon(1e-12));
  }
  SUBCASE("half-mixed against half-pure") {
    const auto [rho, sigma] = half_mixed_half_pure();
    CHECK(dbar(rho, sigma) == doctest::Approx(0.5).epsilon(1e-12));
  }
  SUBCASE("rejects unnormalized pairs") {
    CMatrix rho(2), sigma(2);
    rho(0, 0) = 0.6;
    sigma(1, 1) = 0.6;
    CHECK_THROWS_AS(dbar(dm(rho), dm(sigma)), NormalizationError);
  }
  SUBCASE("rejects mismatched dimensions") {
    CMatrix rho(2);
    rho(0, 0) = 0.5;
    CMatrix sigma(4);
    sigma(0, 0) = 0.5;
    CHECK_THROWS_AS(dbar(dm(rho), dm(sigma)), DimensionMismatch);
  }
}

TEST_CASE("closed-form fixtures") {
  const GeneralRealization g = to_general(boundary_realization());
  SUBCASE("boundary pair at x = 0 is fully distinguishable") {
    const auto [rho0, rho1] = bob_conditional_states(g, 0);
    CHECK(dtilde_closed_form(rho0, rho1) == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("boundary pair at x = 1") {
    const auto [rho0, rho1] = bob_conditional_states(g, 1);
    CHECK(dtilde_closed_form(rho0, rho1) == doctest::Approx(kDtilde1).epsilon(1e-12));
  }
  SUBCASE("half-mixed against half-pure") {
    const auto [rho, sigma] = half_mixed_half_pure();
    CHECK(dtilde_closed_form(rho, sigma) ==
          doctest::Approx(0.57735026918962573).epsilon(1e-12));
  }
}

TEST_CASE("direct maximization agrees with the closed form") {
  Rng rng(101);
  for (int trial = 0; trial < 24; ++trial) {
    const std::size_t dim = trial % 2 ? 4 : 2;
    const auto [rho_m, sigma_m] = random_subnormalized_pair(rng, dim);
    const DensityMatrix rho = dm(rho_m), sigma = dm(sigma_m);
    const double closed = dtilde_closed_form(rho, sigma);
    const auto [maximized, diag] = dtilde_maximize(rho, sigma, 8, 1000 + trial);
    CHECK(std::abs(closed - maximized) <= 1e-8);
  }
}

TEST_CASE("maximizer degenerate cases") {
  SUBCASE("identical states give zero") {
    CMatrix half = CMatrix::identity(2);
    half *= 0.25;
    const auto [value, diag] = dtilde_maximize(dm(half), dm(half), 8, 5);
    CHECK(std::abs(value) <= 1e-9);
  }
  SUBCASE("orthogonal pure pair gives one") {
    CMatrix rho(2), sigma(2);
    rho(0, 0) = 0.5;
    sigma(1, 1) = 0.5;
    const auto [value, diag] = dtilde_maximize(dm(rho), dm(sigma), 8, 6);
    CHECK(value == doctest::Approx(1.0).epsilon(1e-8));
  }
  SUBCASE("restarts below one rejected") {
    CMatrix rho(2), sigma(2);
    rho(0, 0) = 0.5;
    sigma(1, 1) = 0.5;
    CHECK_THROWS_AS(dtilde_maximize(dm(rho), dm(sigma), 0, 1), DomainError);
  }
}

TEST_CASE("tilted distance identity") {
  const GeneralRealization g = to_general(boundary_realization());
  const auto [rho0, rho1] = bob_conditional_states(g, 0);
  SUBCASE("eps = 0 reduces to the plain value") {
    CHECK(dtilde_eps(rho0, rho1, 0.0) ==
          doctest::Approx(dtilde_closed_form(rho0, rho1)).epsilon(1e-12));
  }
  SUBCASE("boundary pair at x = 0 with eps = 1/3") {
    CHECK(dtilde_eps(rho0, rho1, 1.0 / 3.0) ==
          doctest::Approx(1.1547005383792515).epsilon(1e-12));  // sqrt(4/3)
  }
  SUBCASE("trace-symmetric pair adds eps in quadrature") {
    const auto [s0, s1] = bob_conditional_states(g, 1);  // traces 1/2 each
    const double base = dtilde_closed_form(s0, s1);
    for (const double eps : {-0.7, 0.2, 1.5})
      CHECK(dtilde_eps(s0, s1, eps) ==
            doctest::Approx(std::sqrt(base * base + eps * eps)).epsilon(1e-12));
  }
}

TEST_CASE("profile fixtures") {
  SUBCASE("boundary realization, Bob side") {
    const DistanceProfile prof =
        distance_profile(to_general(boundary_realization()), Side::Bob);
    CHECK(prof.dtilde[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(prof.dtilde[1] == doctest::Approx(kDtilde1).epsilon(1e-12));
  }
  SUBCASE("tilted family keeps dtilde = (1, sin 2 theta) across alpha") {
    for (const double alpha : {0.2, 0.7, 1.3, 2.0})
      for (const double theta : {0.2, 0.5, kPi / 4.0}) {
        const TiltedFamilyPoint point = tilted_family(alpha, theta);
        const DistanceProfile prof =
            distance_profile(to_general(point.realization), Side::Bob);
        CHECK(prof.dtilde[0] == doctest::Approx(1.0).epsilon(1e-11));
        CHECK(prof.dtilde[1] ==
              doctest::Approx(std::sin(2.0 * theta)).epsilon(1e-11));
      }
  }
  SUBCASE("maximally entangled realization steers orthogonally") {
    const DistanceProfile prof =
        distance_profile(to_general(chsh_optimal_realization()), Side::Bob);
    CHECK(prof.dtilde[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(prof.dtilde[1] == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("eps request populates the tilted entries") {
    const DistanceProfile prof = distance_profile(
        to_general(boundary_realization()), Side::Bob, std::array<double, 2>{1.0 / 3.0, 0.0});
    REQUIRE(prof.dtilde_eps.has_value());
    CHECK((*prof.dtilde_eps)[0] == doctest::Approx(1.1547005383792515).epsilon(1e-12));
    CHECK((*prof.dtilde_eps)[1] == doctest::Approx(prof.dtilde[1]).epsilon(1e-12));
  }
}

TEST_CASE("pure-state equality and sandwich") {
  Rng rng(55);
  int orthogonal_hits = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t dim = 2 + 2 * (trial % 3);  // 2, 4, 6
    const bool pure = trial % 2 == 0;
    const auto [rho_m, sigma_m] = random_subnormalized_pair(rng, dim, pure);
    const DensityMatrix rho = dm(rho_m), sigma = dm(sigma_m);
    const double db = dbar(rho, sigma);
    const double dt = dtilde_closed_form(rho, sigma);
    CHECK(db <= dt + 1e-9);
    CHECK(dt <= std::sqrt(db) + 1e-9);
    if (pure) CHECK(std::abs(dt - db) <= 1e-9);
    // Threshold equivalence.
    CHECK((dt >= 1.0 - 1e-9) == (db >= 1.0 - 1e-6));
    if (dt >= 1.0 - 1e-9) ++orthogonal_hits;
  }
  // Include explicitly orthogonal pairs so the threshold check is not vacuous.
  for (int trial = 0; trial < 10; ++trial) {
    const double w = rng.uniform(0.1, 0.9);
    CMatrix rho(4), sigma(4);
    rho(0, 0) = w * 0.7;
    rho(1, 1) = w * 0.3;
    sigma(2, 2) = (1.0 - w) * 0.4;
    sigma(3, 3) = (1.0 - w) * 0.6;
    const double dt = dtilde_closed_form(dm(rho), dm(sigma));
    const double db = dbar(dm(rho), dm(sigma));
    CHECK(dt == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(db == doctest::Approx(1.0).epsilon(1e-12));
    ++orthogonal_hits;
  }
  CHECK(orthogonal_hits >= 10);
}

TEST_CASE("block additivity of the squared closed form") {
  Rng rng(77);
  for (int trial = 0; trial < 50; ++trial) {
    // Two 2x2 blocks with weights w and 1 - w.
    const double w = rng.uniform(0.1, 0.9);
    const auto [r0, s0] = random_subnormalized_pair(rng, 2);
    const auto [r1, s1] = random_subnormalized_pair(rng, 2);
    CMatrix rho(4), sigma(4);
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j) {
        rho(i, j) = w * r0(i, j);
        rho(i + 2, j + 2) = (1.0 - w) * r1(i, j);
        sigma(i, j) = w * s0(i, j);
        sigma(i + 2, j + 2) = (1.0 - w) * s1(i, j);
      }
    const double whole = dtilde_closed_form(dm(rho), dm(sigma));
    const double block0 = dtilde_closed_form(dm(r0), dm(s0));
    const double block1 = dtilde_closed_form(dm(r1), dm(s1));
    CHECK(whole * whole ==
          doctest::Approx(w * block0 * block0 + (1.0 - w) * block1 * block1).epsilon(1e-10));
  }
}

TEST_CASE("scaling of the unnormalized closed form") {
  Rng rng(88);
  for (int trial = 0; trial < 30; ++trial) {
    const auto [rho, sigma] = random_subnormalized_pair(rng, 3);
    const double c = rng.uniform(0.2, 0.9);
    const double base = std::sqrt(detail::dtilde_closed_form_raw(rho, sigma));
    const double scaled =
        std::sqrt(detail::dtilde_closed_form_raw(Complex(c) * rho, Complex(c) * sigma));
    CHECK(scaled == doctest::Approx(std::sqrt(c) * base).epsilon(1e-10));
  }
}

TEST_CASE("symmetry under argument exchange") {
  Rng rng(99);
  for (int trial = 0; trial < 30; ++trial) {
    const auto [rho_m, sigma_m] = random_subnormalized_pair(rng, 4);
    const DensityMatrix rho = dm(rho_m), sigma = dm(sigma_m);
    CHECK(dtilde_closed_form(rho, sigma) ==
          doctest::Approx(dtilde_closed_form(sigma, rho)).epsilon(1e-12));
  }
}

TEST_CASE("support violation fires on inconsistent inputs") {
  // rho + sigma is rank 1 along |0>, but rho - sigma has weight entirely
  // inside the null space.
  CMatrix rho(3), sigma(3);
  rho(0, 0) = 0.5;
  rho(1, 1) = 0.05;
  rho(2, 2) = -0.05;
  sigma(0, 0) = 0.5;
  sigma(1, 1) = -0.05;
  sigma(2, 2) = 0.05;
  // Bypass the density-matrix validity check on purpose: these inputs are
  // slightly non-positive, which is exactly the inconsistency the guard
  // exists to catch.
  CHECK_THROWS_AS(dtilde_closed_form(DensityMatrix(rho), DensityMatrix(sigma)),
                  SupportViolation);
}
