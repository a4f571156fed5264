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

#include "nlb/extremal.hpp"

#include <cmath>
#include <numbers>

#include "nlb/errors.hpp"

namespace nlb {

namespace {

constexpr double kPi = std::numbers::pi;

CMatrix planar(double angle) {
  CMatrix m(2);
  m(0, 0) = std::sin(angle);
  m(1, 1) = -std::sin(angle);
  m(0, 1) = std::cos(angle);
  m(1, 0) = std::cos(angle);
  return m;
}

}  // namespace

LocalBloch extract_local_bloch(const TwoQubitRealization& r, Side side) {
  const GeneralRealization g = to_general(r);
  LocalBloch bloch;
  bloch.side = side == Side::Alice ? Side::Alice : Side::Bob;
  for (int setting = 0; setting < 2; ++setting) {
    CMatrix reduced(2);
    if (side == Side::Bob) {
      reduced = partial_trace_first(kron(g.alice_obs[setting], CMatrix::identity(2)) * g.state,
                                    2, 2);
    } else {
      reduced = partial_trace_second(kron(CMatrix::identity(2), g.bob_obs[setting]) * g.state,
                                     2, 2);
    }
    const std::array<double, 4> c = pauli_decompose(reduced);
    if (std::abs(c[2]) > 1e-10)
      throw NonRealSymmetric("extract_local_bloch: residual sigma_2 component " +
                             std::to_string(c[2]));
    bloch.alpha[setting] = c[0];
    bloch.beta[setting] = std::hypot(c[1], c[3]);
    bloch.phi[setting] = bloch.beta[setting] > 0.0 ? std::atan2(c[3], c[1]) : 0.0;
  }
  return bloch;
}

namespace {

SaturationVerdict saturation_condition_impl(const LocalBloch& bloch,
                                            const std::array<double, 2>& partner_angles,
                                            double tol, bool lenient) {
  double sines[2][2];
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y) sines[x][y] = std::sin(bloch.phi[x] - partner_angles[y]);

  SaturationVerdict verdict;
  verdict.product_value = sines[0][0] * sines[0][1] * sines[1][0] * sines[1][1];
  verdict.satisfied = verdict.product_value <= tol;
  if (!verdict.satisfied) return verdict;

  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      if (std::abs(sines[x][y]) < 1e-12) {
        if (lenient) return verdict;
        throw DegenerateAngles("saturation_condition: sin(phi_x - theta_y) vanishes");
      }

  // Alignment equations with u00 fixed to 1:
  //   u00 s00 + u01 s01 = 0,  u10 s10 - u11 s11 = 0,  u00 u01 = u10 u11.
  const double u01 = -sines[0][0] / sines[0][1];
  const double ratio = sines[1][1] / sines[1][0];  // u10 / u11
  const double u11_sq = u01 / ratio;
  const double u11 = std::sqrt(std::max(0.0, u11_sq));
  const double u10 = ratio * u11;
  verdict.u_weights = {1.0, u01, u10, u11};
  return verdict;
}

}  // namespace

SaturationVerdict saturation_condition(const LocalBloch& bloch,
                                       const std::array<double, 2>& partner_angles,
                                       double tol) {
  return saturation_condition_impl(bloch, partner_angles, tol, false);
}

SaturationVerdict saturation_condition_lenient(const LocalBloch& bloch,
                                               const std::array<double, 2>& partner_angles,
                                               double tol) {
  return saturation_condition_impl(bloch, partner_angles, tol, true);
}

TiltedFamilyPoint tilted_family(double alpha, double theta) {
  if (!(alpha > 0.0)) throw DomainError("tilted_family: alpha must be positive");
  if (!(theta > 0.0) || theta > kPi / 4.0 + 1e-15)
    throw DomainError("tilted_family: theta must lie in (0, pi/4]");

  const double s2 = std::sin(2.0 * theta);
  const double c2 = std::cos(2.0 * theta);
  const double norm = std::sqrt(s2 * s2 + alpha * alpha);

  TiltedFamilyPoint point;
  point.realization.schmidt_angle = theta;
  point.realization.alice_angles = {kPi / 2.0, 0.0};  // sigma_3 and sigma_1
  point.realization.bob_angles = {std::atan2(alpha, s2), std::atan2(alpha, -s2)};

  Correlators& e = point.expected;
  for (int y = 0; y < 2; ++y) {
    e.C[0][y] = alpha / norm;
    e.C[1][y] = (y ? -1.0 : 1.0) * s2 * s2 / norm;
    e.mB[y] = alpha * c2 / norm;
  }
  e.mA = {c2, 0.0};
  point.expected_dtilde = {1.0, s2};
  return point;
}

TiltedFamilyPoint boundary_example() {
  return tilted_family(1.0, std::acos(std::sqrt(2.0 / 3.0)));
}

Behavior mix_with_noise(const Behavior& b, double lambda) {
  if (lambda < 0.0 || lambda > 1.0) throw DomainError("mix_with_noise: lambda outside [0, 1]");
  Behavior q;
  for (int a = 0; a < 2; ++a)
    for (int bb = 0; bb < 2; ++bb)
      for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
          q.p[a][bb][x][y] = lambda * b.p[a][bb][x][y] + (1.0 - lambda) * 0.25;
  return q;
}

GeneralRealization realize_mixture(const TwoQubitRealization& r, double lambda) {
  if (lambda < 0.0 || lambda > 1.0) throw DomainError("realize_mixture: lambda outside [0, 1]");
  const GeneralRealization base = to_general(r);

  CMatrix mixed_pair = CMatrix::identity(4);
  mixed_pair *= 0.25;

  CMatrix flag_pair(4);  // lambda |00><00| + (1 - lambda) |11><11|
  flag_pair(0, 0) = lambda;
  flag_pair(3, 3) = 1.0 - lambda;

  GeneralRealization out;
  out.dim_a = 8;
  out.dim_b = 8;
  const CMatrix base_and_mixed = bipartite_kron(base.state, 2, 2, mixed_pair, 2, 2);
  out.state = bipartite_kron(base_and_mixed, 4, 4, flag_pair, 2, 2);

  // Flag-controlled observables: measure the base qubit when the local flag
  // is 0, the mixed qubit when it is 1.
  CMatrix flag0(2), flag1(2);
  flag0(0, 0) = 1.0;
  flag1(1, 1) = 1.0;
  const CMatrix id2 = CMatrix::identity(2);
  for (int setting = 0; setting < 2; ++setting) {
    const CMatrix a = planar(r.alice_angles[setting]);
    const CMatrix b = planar(r.bob_angles[setting]);
    out.alice_obs[setting] = kron(kron(a, id2), flag0) + kron(kron(id2, a), flag1);
    out.bob_obs[setting] = kron(kron(b, id2), flag0) + kron(kron(id2, b), flag1);
  }
  return out;
}

std::vector<MixingRow> mixing_experiment(const TwoQubitRealization& r,
                                         std::span<const double> lambdas) {
  const DistanceProfile base_prof = distance_profile(to_general(r), Side::Bob);
  std::vector<MixingRow> rows;
  rows.reserve(2 * lambdas.size());
  for (const double lambda : lambdas) {
    const GeneralRealization mixture = realize_mixture(r, lambda);
    const DistanceProfile prof = distance_profile(mixture, Side::Bob);
    const auto [behavior, corr] = evaluate_behavior(mixture);
    const InequalityReport landau = extended_landau_margin(corr, prof);
    for (int x = 0; x < 2; ++x) {
      MixingRow row;
      row.lambda = lambda;
      row.x = x;
      row.dtilde_measured = prof.dtilde[x];
      row.dtilde_paper_linear = lambda * base_prof.dtilde[x];
      row.dtilde_blockform = std::sqrt(lambda) * base_prof.dtilde[x];
      row.landau_margin = landau.margin;
      rows.push_back(row);
    }
  }
  return rows;
}

SaturatingWeights saturating_weights(const TwoQubitRealization& r) {
  const LocalBloch bloch = extract_local_bloch(r, Side::Bob);
  const SaturationVerdict verdict = saturation_condition(bloch, r.bob_angles);
  if (!verdict.satisfied || !verdict.u_weights)
    throw DomainError("saturating_weights: realization fails the alignment condition");
  const std::array<double, 4>& u = *verdict.u_weights;

  const GeneralRealization g = to_general(r);
  const CMatrix rho_b = partial_trace_first(g.state, 2, 2);
  const DistanceProfile prof = distance_profile(g, Side::Bob);

  SaturatingWeights w;
  w.u = {{{u[0], u[1]}, {u[2], u[3]}}};
  for (int x = 0; x < 2; ++x) {
    CMatrix xx = w.u[x][0] * Complex(1.0) * g.bob_obs[0];
    xx += ((x ? -1.0 : 1.0) * w.u[x][1]) * Complex(1.0) * g.bob_obs[1];
    const double q = trace_product(xx * xx, rho_b).real();
    if (prof.dtilde[x] < 1e-12)
      throw DomainError("saturating_weights: dtilde vanishes");
    w.s[x] = std::sqrt(std::max(0.0, q)) / prof.dtilde[x];
  }
  const double scale = std::max(w.s[0], w.s[1]);
  if (scale > 0.0) {
    w.s[0] /= scale;
    w.s[1] /= scale;
  }
  return w;
}

}  // namespace nlb
