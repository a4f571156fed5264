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

#include "nlb/bounds.hpp"
#include "nlb/errors.hpp"
#include "nlb/protocol.hpp"
#include "test_util.hpp"

using namespace nlb;
using namespace nlb::testing;

namespace {

// Generic box inside the validity region |2 p(0|x) - 1| < dbar_x < 1.
TwoQubitRealization generic_box_realization() {
  TwoQubitRealization r;
  r.schmidt_angle = 0.5;
  r.alice_angles = {1.0, 0.3};
  r.bob_angles = {0.8, -0.4};
  return r;
}

BoxModel uniform_box() {
  BoxModel box;
  box.E = {0.0, 0.0};
  box.dbar = {0.0, 0.0};
  box.dtilde = {0.0, 0.0};
  box.pA0 = {0.5, 0.5};
  box.pG0 = {0.5, 0.5};
  return box;
}

}  // namespace

TEST_CASE("box model fixtures") {
  SUBCASE("boundary realization") {
    const BoxModel box = box_model(boundary_realization());
    const double expected_e = std::sqrt(17.0) / 6.0;
    CHECK(box.E[0] == doctest::Approx(expected_e).epsilon(1e-12));
    CHECK(box.E[1] == doctest::Approx(expected_e).epsilon(1e-12));
    CHECK(box.dtilde[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(box.dtilde[1] == doctest::Approx(kDtilde1).epsilon(1e-12));
    CHECK(box.pA0[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    CHECK(box.pA0[1] == doctest::Approx(0.5).epsilon(1e-12));
  }
  SUBCASE("maximally entangled optimum") {
    const BoxModel box = box_model(chsh_optimal_realization());
    CHECK(box.E[0] == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
    CHECK(box.E[1] == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
  }
  SUBCASE("product realization factorizes the bias") {
    const TwoQubitRealization r{0.0, {0.7, -0.2}, {0.9, 1.4}};
    const BoxModel box = box_model(r);
    const Correlators corr = correlators_analytic(r);
    for (int y = 0; y < 2; ++y)
      CHECK(box.E[y] ==
            doctest::Approx(0.5 * (corr.C[0][y] + (y ? -1.0 : 1.0) * corr.C[1][y]))
                .epsilon(1e-12));
  }
  SUBCASE("per-box bias invariant") {
    Rng rng(3);
    for (int trial = 0; trial < 20; ++trial) {
      const BoxModel box = box_model(random_realization(rng));
      const Correlators corr = correlators_analytic(box.realization);
      for (int y = 0; y < 2; ++y)
        CHECK(std::abs(box.E[y] -
                       0.5 * (corr.C[0][y] + (y ? -1.0 : 1.0) * corr.C[1][y])) <= 1e-12);
    }
  }
}

TEST_CASE("parity bound") {
  SUBCASE("single box coincides with the quarter-circle form") {
    const TwoQubitRealization r = boundary_realization();
    const BoxModel box = box_model(r);
    const ParityProtocolReport rep = parity_bound(box, 1);
    CHECK(rep.lhs == doctest::Approx(17.0 / 18.0).epsilon(1e-12));
    CHECK(rep.rhs == doctest::Approx(17.0 / 18.0).epsilon(1e-12));

    const GeneralRealization g = to_general(r);
    const auto [behavior, corr] = evaluate_behavior(g);
    const InequalityReport ic = ic_type_check(corr, distance_profile(g, Side::Bob));
    CHECK(std::abs(rep.lhs - ic.lhs) <= 1e-12);
    CHECK(std::abs(rep.rhs - ic.rhs) <= 1e-12);
  }
  SUBCASE("saturation persists under powers") {
    const BoxModel box = box_model(chsh_optimal_realization());
    const ParityProtocolReport rep = parity_bound(box, 3);
    CHECK(rep.lhs == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(rep.rhs == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("soundness for random boxes") {
    Rng rng(5);
    for (int trial = 0; trial < 100; ++trial) {
      const BoxModel box = box_model(random_realization(rng));
      for (int n = 1; n <= 10; ++n) {
        const ParityProtocolReport rep = parity_bound(box, n);
        CHECK(rep.lhs <= rep.rhs + 1e-10);
      }
    }
  }
  SUBCASE("range of n") {
    const BoxModel box = box_model(generic_box_realization());
    CHECK_THROWS_AS(parity_bound(box, 0), DomainError);
    CHECK_THROWS_AS(parity_bound(box, 65), DomainError);
  }
}

TEST_CASE("explicit string enumeration matches the product form") {
  Rng rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    const BoxModel box = box_model(random_realization(rng));
    for (const int n : {1, 4, 8, 12}) {
      // sum over all y-strings of prod_i E_{y_i}^2
      double total = 0.0;
      for (int bits = 0; bits < (1 << n); ++bits) {
        double prod = 1.0;
        for (int i = 0; i < n; ++i) prod *= box.E[(bits >> i) & 1];
        total += prod * prod;
      }
      const double closed = parity_bound(box, n).lhs;
      CHECK(std::abs(total - closed) <= 1e-10);
    }
  }
}

TEST_CASE("optimal guess joint distribution") {
  SUBCASE("boundary realization at x = 0 guesses perfectly") {
    const BoxModel box = box_model(boundary_realization());
    const auto joint = helstrom_joint(box, 0);
    CHECK(joint[0][0] + joint[1][1] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(joint[0][1] == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(joint[1][0] == doctest::Approx(0.0).epsilon(1e-12));
  }
  SUBCASE("boundary realization at x = 1") {
    const BoxModel box = box_model(boundary_realization());
    const auto joint = helstrom_joint(box, 1);
    CHECK(joint[0][0] + joint[1][1] ==
          doctest::Approx(0.97140452079103179).epsilon(1e-12));  // (1 + dbar_1)/2
  }
  SUBCASE("identical states fall back to the fair coin") {
    CMatrix quarter = CMatrix::identity(2);
    quarter *= 0.25;
    const DensityMatrix rho(quarter);
    const auto joint = helstrom_joint(rho, rho);
    for (int a = 0; a < 2; ++a)
      for (int g = 0; g < 2; ++g)
        CHECK(joint[a][g] == doctest::Approx(0.25).epsilon(1e-12));
  }
  SUBCASE("optimality against random projective guesses") {
    Rng rng(11);
    for (int trial = 0; trial < 10; ++trial) {
      const TwoQubitRealization r = random_realization(rng);
      const GeneralRealization g = to_general(r);
      for (int x = 0; x < 2; ++x) {
        const auto [rho0, rho1] = bob_conditional_states(g, x);
        const auto joint = helstrom_joint(rho0, rho1);
        const double best = joint[0][0] + joint[1][1];
        for (int probe = 0; probe < 100; ++probe) {
          // random projective guess basis on the Bloch circle
          const double ang = rng.uniform(-kPi, kPi);
          CMatrix proj(2);
          proj(0, 0) = 0.5 * (1.0 + std::sin(ang));
          proj(1, 1) = 0.5 * (1.0 - std::sin(ang));
          proj(0, 1) = proj(1, 0) = 0.5 * std::cos(ang);
          const double agree = trace_product(proj, rho0.mat()).real() +
                               (rho1.trace() - trace_product(proj, rho1.mat()).real());
          CHECK(agree <= best + 1e-10);
        }
      }
    }
  }
}

TEST_CASE("exact parity information") {
  SUBCASE("orthogonal box transmits the full bit") {
    const BoxModel box = box_model(chsh_optimal_realization());  // dbar = (1, 1)
    CHECK(parity_info_exact(box, 1) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(parity_info_exact(box, 5) == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("boundary box at n = 1") {
    const BoxModel box = box_model(boundary_realization());
    CHECK(parity_info_exact(box, 1) ==
          doctest::Approx(0.90635070071561386).epsilon(1e-11));
  }
  SUBCASE("uniform box carries nothing") {
    const BoxModel box = uniform_box();
    for (const int n : {1, 7, 25}) CHECK(parity_info_exact(box, n) == 0.0);
  }
  SUBCASE("n range") {
    const BoxModel box = uniform_box();
    CHECK_THROWS_AS(parity_info_exact(box, 0), DomainError);
    CHECK_THROWS_AS(parity_info_exact(box, 41), DomainError);
  }
}

TEST_CASE("asymptotic parity information") {
  SUBCASE("unit distances saturate the constant") {
    const BoxModel box = box_model(chsh_optimal_realization());
    CHECK(parity_info_asymptotic(box, 12) ==
          doctest::Approx(0.72134752044448169).epsilon(1e-12));
  }
  SUBCASE("generic value in log space") {
    BoxModel box = uniform_box();
    box.dbar = {0.9, 0.7};
    const double expected = std::exp(30.0 * std::log(0.65)) * 0.72134752044448169;
    CHECK(parity_info_asymptotic(box, 30) == doctest::Approx(expected).epsilon(1e-12));
  }
  SUBCASE("zero distances give zero") {
    CHECK(parity_info_asymptotic(uniform_box(), 3) == 0.0);
  }
}

TEST_CASE("exact-to-asymptotic convergence for a generic box") {
  const BoxModel box = box_model(generic_box_realization());
  for (int x = 0; x < 2; ++x) {
    CHECK(std::abs(2.0 * box.pA0[x] - 1.0) < box.dbar[x]);
    CHECK(box.dbar[x] < 1.0);
  }
  double prev = 1e300;
  for (const int n : {10, 20, 30, 40}) {
    const double ratio = parity_info_exact(box, n) / parity_info_asymptotic(box, n);
    const double dev = std::abs(ratio - 1.0);
    CHECK(dev < prev);
    prev = dev;
    if (n == 40) CHECK(dev <= 0.05);
  }
}

TEST_CASE("sweep rows carry the validity flag") {
  const auto rows = protocol_sweep(box_model(chsh_optimal_realization()), 3);
  REQUIRE(rows.size() == 3);
  for (const auto& rep : rows) CHECK(!rep.asymptotic_valid);  // dbar = 1 is outside
  const auto generic = protocol_sweep(box_model(generic_box_realization()), 3);
  for (const auto& rep : generic) CHECK(rep.asymptotic_valid);
}
