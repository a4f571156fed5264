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

#include "nlb/distance.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "nlb/errors.hpp"
#include "nlb/nelder_mead.hpp"
#include "nlb/rng.hpp"

namespace nlb {

namespace {

constexpr double kNullSpaceCutoff = 1e-12;
constexpr double kSupportLeakTol = 1e-8;

void check_pair(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dim() != sigma.dim())
    throw DimensionMismatch("distance: state dimensions differ");
  const double total = rho.trace() + sigma.trace();
  if (std::abs(total - 1.0) > 1e-10)
    throw NormalizationError("distance: tr(rho + sigma) = " + std::to_string(total) +
                             ", expected 1");
}

/**
 * Shared closed-form core: numerator operator N expressed in the eigenbasis
 * of rho + sigma, with null-space pairs dropped and guarded.
 */
double closed_form_sq(const CMatrix& numerator, const CMatrix& sum) {
  const EigResult eig = eig_hermitian(sum);
  const std::size_t n = sum.dim();
  // a = V^dagger N V
  const CMatrix a = eig.vectors.adjoint() * numerator * eig.vectors;
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const double denom = eig.values[i] + eig.values[j];
      const double w = std::norm(a(i, j));
      if (denom <= kNullSpaceCutoff) {
        if (std::sqrt(w) > kSupportLeakTol)
          throw SupportViolation("dtilde: numerator escapes the support of rho + sigma");
        continue;
      }
      total += 2.0 * w / denom;
    }
  return total;
}

}  // namespace

double dbar(const DensityMatrix& rho, const DensityMatrix& sigma) {
  check_pair(rho, sigma);
  const CMatrix diff = rho.mat() - sigma.mat();
  const EigResult eig = eig_hermitian(diff);
  double sum = 0.0;
  for (double v : eig.values) sum += std::abs(v);
  return sum;
}

double dtilde_closed_form(const DensityMatrix& rho, const DensityMatrix& sigma) {
  check_pair(rho, sigma);
  const double value =
      std::sqrt(std::max(0.0, detail::dtilde_closed_form_raw(rho.mat(), sigma.mat())));
  if (value > 1.0 + 1e-9)
    throw std::logic_error("dtilde: value " + std::to_string(value) +
                           " exceeds 1 beyond the overshoot allowance");
  return std::clamp(value, 0.0, 1.0);
}

double detail::dtilde_closed_form_raw(const CMatrix& rho, const CMatrix& sigma) {
  return closed_form_sq(rho - sigma, rho + sigma);
}

std::pair<double, MaximizeDiagnostics> dtilde_maximize(const DensityMatrix& rho,
                                                       const DensityMatrix& sigma,
                                                       int restarts, std::uint64_t seed) {
  check_pair(rho, sigma);
  if (restarts < 1) throw DomainError("dtilde_maximize: restarts must be >= 1");

  const std::size_t n = rho.dim();
  const EigResult eig = eig_hermitian(rho.mat() + sigma.mat());
  const CMatrix diff_eb = eig.vectors.adjoint() * (rho.mat() - sigma.mat()) * eig.vectors;
  const std::vector<double> lambda = eig.values;

  // Real coordinates of Hermitian X in the eigenbasis: n diagonal entries
  // followed by (re, im) for each upper off-diagonal pair.
  const std::size_t ncoord = n * n;
  const auto objective = [&](std::span<const double> x) {
    double num = 0.0, den = 0.0;
    std::size_t k = n;
    for (std::size_t i = 0; i < n; ++i) {
      num += x[i] * diff_eb(i, i).real();
      den += lambda[i] * x[i] * x[i];
    }
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        const double re = x[k], im = x[k + 1];
        k += 2;
        num += 2.0 * (re * diff_eb(i, j).real() - im * diff_eb(i, j).imag());
        den += (lambda[i] + lambda[j]) * (re * re + im * im);
      }
    if (den <= 1e-300) return -1.0;
    return num / std::sqrt(den);
  };

  MaximizeDiagnostics diag;
  diag.restarts = restarts;
  diag.seed = seed;
  std::vector<double> values;
  Rng rng(seed);
  for (int r = 0; r < restarts; ++r) {
    std::vector<double> x(ncoord);
    for (auto& v : x) v = rng.uniform(-1.0, 1.0);
    // Simplex ascent in stages of shrinking scale: a fresh simplex around
    // the incumbent point recovers the progress a single large simplex
    // loses in higher dimensions.
    double best = -1.0;
    for (double scale = 0.5; scale > 1e-9; scale *= 0.1) {
      NelderMeadOptions opts;
      opts.initial_scale = scale;
      opts.diameter_tol = 1e-10;
      opts.max_evals = 120 * ncoord + 2000;
      const NelderMeadResult res = nelder_mead_maximize(objective, x, opts);
      diag.evals += res.evals;
      if (res.value <= best + 1e-14) {
        best = std::max(best, res.value);
        break;
      }
      best = res.value;
      x = res.x;
    }
    values.push_back(best);
  }
  std::sort(values.rbegin(), values.rend());
  diag.best = values[0];
  diag.second_best = values.size() > 1 ? values[1] : values[0];
  if (values.size() > 1 && diag.best - diag.second_best > 1e-6)
    throw ConvergenceFailure("dtilde_maximize: best restarts disagree by " +
                             std::to_string(diag.best - diag.second_best));
  return {diag.best, diag};
}

double dtilde_eps(const DensityMatrix& rho, const DensityMatrix& sigma, double eps) {
  check_pair(rho, sigma);
  if (!std::isfinite(eps)) throw DomainError("dtilde_eps: eps must be finite");
  const double dt_sq = detail::dtilde_closed_form_raw(rho.mat(), sigma.mat());
  const double bias = rho.trace() - sigma.trace();
  const double via_identity = dt_sq + 2.0 * eps * bias + eps * eps;

  // Same quantity through the tilted numerator (1+eps) rho - (1-eps) sigma.
  const CMatrix tilted =
      Complex(1.0 + eps) * rho.mat() - Complex(1.0 - eps) * sigma.mat();
  const double via_numerator = closed_form_sq(tilted, rho.mat() + sigma.mat());
  if (std::abs(via_identity - via_numerator) > 1e-10)
    throw std::logic_error("dtilde_eps: identity and numerator routes disagree by " +
                           std::to_string(via_identity - via_numerator));
  return std::sqrt(std::max(0.0, via_identity));
}

DistanceProfile distance_profile(const GeneralRealization& r, Side side,
                                 std::optional<std::array<double, 2>> eps) {
  DistanceProfile prof;
  prof.side = side;
  std::array<double, 2> eps_vals{};
  for (int setting = 0; setting < 2; ++setting) {
    const auto [s0, s1] = side == Side::Bob ? bob_conditional_states(r, setting)
                                            : alice_conditional_states(r, setting);
    prof.dbar[setting] = dbar(s0, s1);
    prof.dtilde[setting] = dtilde_closed_form(s0, s1);
    if (eps) eps_vals[setting] = dtilde_eps(s0, s1, (*eps)[setting]);
    if (prof.dbar[setting] > prof.dtilde[setting] + 1e-10 ||
        prof.dtilde[setting] > std::sqrt(prof.dbar[setting]) + 1e-10)
      throw std::logic_error("distance_profile: sandwich violated");
  }
  if (eps) prof.dtilde_eps = eps_vals;
  return prof;
}

}  // namespace nlb
