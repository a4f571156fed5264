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

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace nlb {

struct NelderMeadOptions {
  double initial_scale = 0.5;    // edge length of the starting simplex
  double diameter_tol = 1e-10;   // stop when the simplex diameter shrinks below this
  std::size_t max_evals = 0;     // 0 = pick a default based on dimension
};

struct NelderMeadResult {
  std::vector<double> x;
  double value = 0.0;
  std::size_t evals = 0;
  bool converged = false;
};

/** Derivative-free simplex maximization of f starting from x0. */
NelderMeadResult nelder_mead_maximize(const std::function<double(std::span<const double>)>& f,
                                      std::span<const double> x0,
                                      const NelderMeadOptions& options = {});

}  // namespace nlb
