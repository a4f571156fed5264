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

#include "nlb/core.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "nlb/errors.hpp"

namespace nlb {

namespace {

constexpr double kPi = std::numbers::pi;

CMatrix planar_observable(double angle) {
  CMatrix m(2);
  m(0, 0) = std::sin(angle);
  m(1, 1) = -std::sin(angle);
  m(0, 1) = std::cos(angle);
  m(1, 0) = std::cos(angle);
  return m;
}

CMatrix projector(const CMatrix& obs, int outcome) {
  const double sign = outcome == 0 ? 1.0 : -1.0;
  CMatrix p = CMatrix::identity(obs.dim());
  p += sign * obs;
  p *= 0.5;
  return p;
}

void check_observable(const CMatrix& obs, const char* label) {
  const CMatrix sq = obs * obs;
  if (sq.max_abs_diff(CMatrix::identity(obs.dim())) > 1e-10)
    throw InvalidObservable(std::string(label) + ": observable squared deviates from identity");
}

/** Wraps an angle into (-pi, pi]. */
double wrap_angle(double a) {
  a = std::fmod(a, 2.0 * kPi);
  if (a <= -kPi) a += 2.0 * kPi;
  if (a > kPi) a -= 2.0 * kPi;
  return a;
}

}  // namespace

DensityMatrix DensityMatrix::checked(CMatrix m) {
  if (m.hermiticity_defect() > 1e-12)
    throw DomainError("DensityMatrix: not Hermitian within 1e-12");
  const double tr = m.trace().real();
  if (tr < -1e-12 || tr > 1.0 + 1e-12)
    throw DomainError("DensityMatrix: trace outside [0, 1]");
  const EigResult eig = eig_hermitian(m);
  if (!eig.values.empty() && eig.values.front() < -1e-10)
    throw DomainError("DensityMatrix: negative eigenvalue " + std::to_string(eig.values.front()));
  return DensityMatrix(std::move(m));
}

GeneralRealization build_realization(double schmidt_angle, double alice_angle0,
                                     double alice_angle1, double bob_angle0, double bob_angle1) {
  GeneralRealization r;
  r.dim_a = 2;
  r.dim_b = 2;
  const double c = std::cos(schmidt_angle);
  const double s = std::sin(schmidt_angle);
  r.state = CMatrix::outer({c, 0.0, 0.0, s});  // cos|00> + sin|11>
  r.alice_obs = {planar_observable(alice_angle0), planar_observable(alice_angle1)};
  r.bob_obs = {planar_observable(bob_angle0), planar_observable(bob_angle1)};
  return r;
}

GeneralRealization to_general(const TwoQubitRealization& r) {
  return build_realization(r.schmidt_angle, r.alice_angles[0], r.alice_angles[1],
                           r.bob_angles[0], r.bob_angles[1]);
}

std::pair<Behavior, Correlators> evaluate_behavior(const GeneralRealization& r) {
  for (int x = 0; x < 2; ++x) check_observable(r.alice_obs[x], "alice");
  for (int y = 0; y < 2; ++y) check_observable(r.bob_obs[y], "bob");

  Behavior b;
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      for (int a = 0; a < 2; ++a)
        for (int bb = 0; bb < 2; ++bb) {
          const CMatrix joint = kron(projector(r.alice_obs[x], a), projector(r.bob_obs[y], bb));
          b.p[a][bb][x][y] = trace_product(joint, r.state).real();
        }
  validate_behavior(b);
  return {b, correlators_of(b)};
}

Correlators correlators_analytic(const TwoQubitRealization& r) {
  const double s2 = std::sin(2.0 * r.schmidt_angle);
  const double c2 = std::cos(2.0 * r.schmidt_angle);
  Correlators c;
  for (int x = 0; x < 2; ++x) {
    c.mA[x] = std::sin(r.alice_angles[x]) * c2;
    for (int y = 0; y < 2; ++y)
      c.C[x][y] = std::cos(r.alice_angles[x]) * std::cos(r.bob_angles[y]) * s2 +
                  std::sin(r.alice_angles[x]) * std::sin(r.bob_angles[y]);
  }
  for (int y = 0; y < 2; ++y) c.mB[y] = std::sin(r.bob_angles[y]) * c2;
  return c;
}

Correlators transpose_correlators(const Correlators& c) {
  Correlators t;
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y) t.C[x][y] = c.C[y][x];
  t.mA = c.mB;
  t.mB = c.mA;
  return t;
}

std::pair<DensityMatrix, DensityMatrix> bob_conditional_states(const GeneralRealization& r,
                                                               int x) {
  if (x != 0 && x != 1) throw DomainError("bob_conditional_states: x must be 0 or 1");
  std::array<CMatrix, 2> out;
  for (int a = 0; a < 2; ++a) {
    const CMatrix proj = kron(projector(r.alice_obs[x], a), CMatrix::identity(r.dim_b));
    out[a] = partial_trace_first(proj * r.state, r.dim_a, r.dim_b);
  }
  return {DensityMatrix::checked(out[0]), DensityMatrix::checked(out[1])};
}

std::pair<DensityMatrix, DensityMatrix> alice_conditional_states(const GeneralRealization& r,
                                                                 int y) {
  if (y != 0 && y != 1) throw DomainError("alice_conditional_states: y must be 0 or 1");
  std::array<CMatrix, 2> out;
  for (int b = 0; b < 2; ++b) {
    const CMatrix proj = kron(CMatrix::identity(r.dim_a), projector(r.bob_obs[y], b));
    out[b] = partial_trace_second(proj * r.state, r.dim_a, r.dim_b);
  }
  return {DensityMatrix::checked(out[0]), DensityMatrix::checked(out[1])};
}

Correlators correlators_of(const Behavior& b) {
  Correlators c;
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y) {
      double corr = 0.0;
      for (int a = 0; a < 2; ++a)
        for (int bb = 0; bb < 2; ++bb)
          corr += ((a ^ bb) ? -1.0 : 1.0) * b.p[a][bb][x][y];
      c.C[x][y] = corr;
    }
  // Marginals averaged over the other party's two settings; no-signaling
  // makes the two contributions equal within tolerance.
  for (int x = 0; x < 2; ++x) {
    double m = 0.0;
    for (int y = 0; y < 2; ++y)
      for (int a = 0; a < 2; ++a)
        for (int bb = 0; bb < 2; ++bb) m += 0.5 * (a ? -1.0 : 1.0) * b.p[a][bb][x][y];
    c.mA[x] = m;
  }
  for (int y = 0; y < 2; ++y) {
    double m = 0.0;
    for (int x = 0; x < 2; ++x)
      for (int a = 0; a < 2; ++a)
        for (int bb = 0; bb < 2; ++bb) m += 0.5 * (bb ? -1.0 : 1.0) * b.p[a][bb][x][y];
    c.mB[y] = m;
  }
  return c;
}

void validate_behavior(const Behavior& b) {
  for (int a = 0; a < 2; ++a)
    for (int bb = 0; bb < 2; ++bb)
      for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y) {
          const double p = b.p[a][bb][x][y];
          if (p < -1e-12 || p > 1.0 + 1e-12)
            throw DomainError("behavior: probability out of range: " + std::to_string(p));
        }
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y) {
      double sum = 0.0;
      for (int a = 0; a < 2; ++a)
        for (int bb = 0; bb < 2; ++bb) sum += b.p[a][bb][x][y];
      if (std::abs(sum - 1.0) > 1e-10)
        throw DomainError("behavior: setting pair not normalized");
    }
  for (int x = 0; x < 2; ++x)
    for (int a = 0; a < 2; ++a) {
      const double m0 = b.p[a][0][x][0] + b.p[a][1][x][0];
      const double m1 = b.p[a][0][x][1] + b.p[a][1][x][1];
      if (std::abs(m0 - m1) > 1e-10)
        throw DomainError("behavior: signaling from Bob to Alice");
    }
  for (int y = 0; y < 2; ++y)
    for (int bb = 0; bb < 2; ++bb) {
      const double m0 = b.p[0][bb][0][y] + b.p[1][bb][0][y];
      const double m1 = b.p[0][bb][1][y] + b.p[1][bb][1][y];
      if (std::abs(m0 - m1) > 1e-10)
        throw DomainError("behavior: signaling from Alice to Bob");
    }
}

TwoQubitRealization canonicalize(double schmidt_angle, const std::array<double, 2>& alice_angles,
                                 const std::array<double, 2>& bob_angles) {
  double t = std::fmod(schmidt_angle, kPi);
  if (t < 0.0) t += kPi;  // state is invariant under theta -> theta + pi
  std::array<double, 2> aa = alice_angles;
  std::array<double, 2> ba = bob_angles;
  if (t > kPi / 2.0) {
    // theta -> pi - theta flips the sign of cos(theta); absorbed by
    // conjugating Alice's observables with sigma_3.
    t = kPi - t;
    for (double& a : aa) a = kPi - a;
  }
  if (t > kPi / 4.0) {
    // theta -> pi/2 - theta swaps the Schmidt coefficients; absorbed by
    // conjugating both parties with sigma_1.
    t = kPi / 2.0 - t;
    for (double& a : aa) a = -a;
    for (double& a : ba) a = -a;
  }
  if (t < 0.0) t = 0.0;
  TwoQubitRealization r;
  r.schmidt_angle = t;
  for (int i = 0; i < 2; ++i) {
    r.alice_angles[i] = wrap_angle(aa[i]);
    r.bob_angles[i] = wrap_angle(ba[i]);
  }
  return r;
}

}  // namespace nlb
