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

#include "nlb/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "nlb/distance.hpp"
#include "nlb/errors.hpp"

namespace nlb {

namespace {

constexpr double kLn2 = 0.69314718055994530941723212;

/** x^n through logarithms; stable for tiny bases and large n. */
double pow_n(double base, int n) {
  if (base <= 0.0) return n == 0 ? 1.0 : 0.0;
  return std::exp(static_cast<double>(n) * std::log(base));
}

/**
 * 1 - h((1 + delta) / 2) in bits, where h is the binary entropy. Uses the
 * series sum_m delta^(2m) / (2m (2m - 1) ln 2) for small delta, where the
 * direct formula would cancel catastrophically.
 */
double info_deficit(double delta) {
  delta = std::clamp(delta, -1.0, 1.0);
  const double d2 = delta * delta;
  if (d2 > 0.09) {
    const double p = 0.5 * (1.0 + delta);
    const double q = 0.5 * (1.0 - delta);
    double h = 0.0;
    if (p > 0.0) h -= p * std::log2(p);
    if (q > 0.0) h -= q * std::log2(q);
    return 1.0 - h;
  }
  double term = d2;
  double sum = 0.0;
  for (int m = 1; m < 60; ++m) {
    const double contrib = term / (2.0 * m * (2.0 * m - 1.0));
    sum += contrib;
    if (contrib < 1e-30 * sum) break;
    term *= d2;
  }
  return sum / kLn2;
}

/** Signed product b0^k * b1^(n-k) accumulated in log space. */
double signed_power_product(double b0, double b1, int k, int n) {
  const double sign = ((b0 < 0.0 && (k % 2)) ? -1.0 : 1.0) *
                      ((b1 < 0.0 && ((n - k) % 2)) ? -1.0 : 1.0);
  const double a0 = std::abs(b0), a1 = std::abs(b1);
  if ((k > 0 && a0 < 1e-300) || (n - k > 0 && a1 < 1e-300)) return 0.0;
  double log_mag = 0.0;
  if (k > 0) log_mag += k * std::log(a0);
  if (n - k > 0) log_mag += (n - k) * std::log(a1);
  return sign * std::exp(log_mag);
}

}  // namespace

BoxModel box_model(const TwoQubitRealization& r) {
  const GeneralRealization g = to_general(r);
  const auto [behavior, corr] = evaluate_behavior(g);
  const DistanceProfile prof = distance_profile(g, Side::Bob);

  BoxModel box;
  box.realization = r;
  box.dbar = prof.dbar;
  box.dtilde = prof.dtilde;
  for (int y = 0; y < 2; ++y)
    box.E[y] = 0.5 * (corr.C[0][y] + (y ? -1.0 : 1.0) * corr.C[1][y]);
  for (int x = 0; x < 2; ++x) {
    box.pA0[x] = 0.5 * (1.0 + corr.mA[x]);
    const auto joint = helstrom_joint(box, x);
    // Conditional states are not stored in the box; recompute per setting.
    box.pG0[x] = joint[0][0] + joint[1][0];
  }
  return box;
}

ParityProtocolReport parity_bound(const BoxModel& box, int n) {
  if (n < 1 || n > 64) throw DomainError("parity_bound: n must lie in [1, 64]");
  ParityProtocolReport rep;
  rep.n = n;
  rep.lhs = pow_n(box.E[0] * box.E[0] + box.E[1] * box.E[1], n);
  rep.rhs = pow_n(0.5 * (box.dtilde[0] * box.dtilde[0] + box.dtilde[1] * box.dtilde[1]), n);
  return rep;
}

std::array<std::array<double, 2>, 2> helstrom_joint(const DensityMatrix& rho0,
                                                    const DensityMatrix& rho1) {
  if (rho0.dim() != rho1.dim()) throw DimensionMismatch("helstrom_joint: dimension mismatch");
  const CMatrix diff = rho0.mat() - rho1.mat();
  const EigResult eig = eig_hermitian(diff);
  const std::size_t dim = diff.dim();

  CMatrix proj_pos(dim), proj_null(dim);
  double dbar_value = 0.0;
  for (std::size_t k = 0; k < dim; ++k) {
    dbar_value += std::abs(eig.values[k]);
    std::vector<Complex> col(dim);
    for (std::size_t i = 0; i < dim; ++i) col[i] = eig.vectors(i, k);
    const CMatrix vk = CMatrix::outer(col);
    if (eig.values[k] > 1e-12)
      proj_pos += vk;
    else if (eig.values[k] >= -1e-12)
      proj_null += vk;
  }
  CMatrix proj_neg = CMatrix::identity(dim);
  proj_neg -= proj_pos;
  proj_neg -= proj_null;

  std::array<std::array<double, 2>, 2> joint{};
  const CMatrix* states[2] = {&rho0.mat(), &rho1.mat()};
  for (int a = 0; a < 2; ++a) {
    const double null_weight = trace_product(proj_null, *states[a]).real();
    joint[a][0] = trace_product(proj_pos, *states[a]).real() + 0.5 * null_weight;
    joint[a][1] = trace_product(proj_neg, *states[a]).real() + 0.5 * null_weight;
  }
  const double agree = joint[0][0] + joint[1][1];
  if (std::abs(agree - 0.5 * (1.0 + dbar_value)) > 1e-10)
    throw std::logic_error("helstrom_joint: agreement probability deviates from (1 + dbar)/2");
  return joint;
}

std::array<std::array<double, 2>, 2> helstrom_joint(const BoxModel& box, int x) {
  if (x != 0 && x != 1) throw DomainError("helstrom_joint: x must be 0 or 1");
  const auto [rho0, rho1] = bob_conditional_states(to_general(box.realization), x);
  return helstrom_joint(rho0, rho1);
}

double parity_info_exact(const BoxModel& box, int n) {
  if (n < 1 || n > 40) throw DomainError("parity_info_exact: n must lie in [1, 40]");
  const double bias_a[2] = {2.0 * box.pA0[0] - 1.0, 2.0 * box.pA0[1] - 1.0};
  const double bias_g[2] = {2.0 * box.pG0[0] - 1.0, 2.0 * box.pG0[1] - 1.0};

  double info = 0.0;
  for (int k = 0; k <= n; ++k) {
    // k boxes at x = 0, n - k at x = 1; XOR multiplies the biases.
    const double za = signed_power_product(bias_a[0], bias_a[1], k, n);
    const double zb = signed_power_product(bias_g[0], bias_g[1], k, n);
    const double zab = signed_power_product(box.dbar[0], box.dbar[1], k, n);

    for (int ap = 0; ap < 2; ++ap)
      for (int bp = 0; bp < 2; ++bp) {
        const double p = 0.25 * (1.0 + (ap ? -za : za) + (bp ? -zb : zb) +
                                 ((ap ^ bp) ? -zab : zab));
        if (p < -1e-12)
          throw NonDistribution("parity_info_exact: joint entry " + std::to_string(p));
      }

    double deficit;
    const double pb0 = 0.5 * (1.0 + zb);
    const double pb1 = 0.5 * (1.0 - zb);
    deficit = 0.0;
    if (pb0 > 1e-300) deficit += pb0 * info_deficit((za + zab) / (1.0 + zb));
    if (pb1 > 1e-300) deficit += pb1 * info_deficit((za - zab) / (1.0 - zb));

    const double log_weight = std::lgamma(n + 1.0) - std::lgamma(k + 1.0) -
                              std::lgamma(n - k + 1.0) - n * std::log(2.0);
    info += std::exp(log_weight) * deficit;
  }
  return info;
}

double parity_info_asymptotic(const BoxModel& box, int n) {
  const double mean_sq = 0.5 * (box.dbar[0] * box.dbar[0] + box.dbar[1] * box.dbar[1]);
  return pow_n(mean_sq, n) / (2.0 * kLn2);
}

std::vector<ParityProtocolReport> protocol_sweep(const BoxModel& box, int n_max) {
  if (n_max < 1) throw DomainError("protocol_sweep: n_max must be >= 1");
  bool valid = true;
  for (int x = 0; x < 2; ++x) {
    const double bias = std::abs(2.0 * box.pA0[x] - 1.0);
    if (!(bias < box.dbar[x] && box.dbar[x] < 1.0 - 1e-12)) valid = false;
  }
  std::vector<ParityProtocolReport> rows;
  rows.reserve(static_cast<std::size_t>(n_max));
  for (int n = 1; n <= n_max; ++n) {
    ParityProtocolReport rep = parity_bound(box, n);
    rep.info_exact = n <= 40 ? parity_info_exact(box, n) : 0.0;
    rep.info_asymptotic = parity_info_asymptotic(box, n);
    rep.asymptotic_valid = valid;
    rows.push_back(rep);
  }
  return rows;
}

}  // namespace nlb
