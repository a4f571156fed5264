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
#include <iosfwd>
#include <optional>
#include <string>

#include "nlb/core.hpp"
#include "nlb/extremal.hpp"

namespace nlb {

/** Unit-norm coefficients of <A_x>, <B_y>, and <A_x B_y>. */
struct BellFunctional {
  std::array<double, 2> gA{};
  std::array<double, 2> gB{};
  std::array<std::array<double, 2>, 2> gC{};

  double norm() const;
  void normalize();
};

struct SearchResult {
  BellFunctional functional;
  TwoQubitRealization best_realization;
  double quantum_value = 0.0;
  double classical_value = 0.0;
  bool nonclassical = false;
  SaturationVerdict verdict_bob;
  SaturationVerdict verdict_alice;
  std::array<double, 2> landau_margins{};  // Bob side, Alice side
  std::uint64_t seed = 0;
};

/** 8 i.i.d. standard normal coefficients, normalized; deterministic per seed. */
BellFunctional sample_functional(std::uint64_t seed);

/** Exact maximum over the 16 deterministic +-1 assignments. */
double classical_max(const BellFunctional& f);

double evaluate_functional(const BellFunctional& f, const Correlators& c);

/**
 * Multi-start simplex maximization over the five realization angles (or four
 * when fixed_theta pins the state). Restart 0 is seeded at the best classical
 * point so the quantum value can never fall below the classical one. Throws
 * ConvergenceFailure when the two best restarts disagree by more than 1e-7.
 */
SearchResult maximize_violation(const BellFunctional& f, int restarts = 64,
                                std::uint64_t seed = 1,
                                std::optional<double> fixed_theta = std::nullopt);

struct BatchSummary {
  int n = 0;
  int n_nonclassical = 0;
  int n_satisfied = 0;
  int n_convergence_failures = 0;
  double max_landau_margin = 0.0;
};

/**
 * Runs maximize_violation on n sampled functionals (workers in parallel,
 * output in input order) and records one JSON object per line. Results go to
 * out_path, or to `fallback` when out_path is empty.
 */
BatchSummary conjecture_batch(int n, std::uint64_t seed, const std::string& out_path,
                              std::ostream& fallback, int restarts = 64);

}  // namespace nlb
