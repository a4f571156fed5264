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

#include "nlb/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace nlb {

namespace {

double vertex_distance(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

}  // namespace

NelderMeadResult nelder_mead_maximize(const std::function<double(std::span<const double>)>& f,
                                      std::span<const double> x0,
                                      const NelderMeadOptions& options) {
  const std::size_t n = x0.size();
  const std::size_t max_evals =
      options.max_evals > 0 ? options.max_evals : 800 * n * n + 4000;

  // Standard reflection/expansion/contraction/shrink coefficients.
  const double alpha = 1.0, gamma = 2.0, beta = 0.5, delta = 0.5;

  std::vector<std::vector<double>> pts(n + 1, std::vector<double>(x0.begin(), x0.end()));
  for (std::size_t i = 0; i < n; ++i) pts[i + 1][i] += options.initial_scale;

  NelderMeadResult res;
  std::vector<double> vals(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    vals[i] = f(pts[i]);
    ++res.evals;
  }

  // Vertex sum maintained incrementally; centroid of all-but-worst follows
  // as (sum - worst) / n.
  std::vector<double> vertex_sum(n, 0.0);
  for (std::size_t i = 0; i <= n; ++i)
    for (std::size_t d = 0; d < n; ++d) vertex_sum[d] += pts[i][d];

  std::vector<double> centroid(n), cand(n), cand2(n);
  const std::size_t diameter_check_period = std::max<std::size_t>(1, n);
  std::size_t since_check = 0;

  const auto replace_vertex = [&](std::size_t idx, const std::vector<double>& x, double value) {
    for (std::size_t d = 0; d < n; ++d) vertex_sum[d] += x[d] - pts[idx][d];
    pts[idx] = x;
    vals[idx] = value;
  };

  while (res.evals < max_evals) {
    std::size_t best = 0, worst = 0, second_worst = 0;
    for (std::size_t i = 1; i <= n; ++i) {
      if (vals[i] > vals[best]) best = i;
      if (vals[i] < vals[worst]) worst = i;
    }
    second_worst = best;
    for (std::size_t i = 0; i <= n; ++i)
      if (i != worst && vals[i] < vals[second_worst]) second_worst = i;

    if (++since_check >= diameter_check_period) {
      since_check = 0;
      double diameter = 0.0;
      for (std::size_t i = 0; i <= n; ++i)
        if (i != best) diameter = std::max(diameter, vertex_distance(pts[best], pts[i]));
      if (diameter < options.diameter_tol) {
        res.converged = true;
        break;
      }
    }

    for (std::size_t d = 0; d < n; ++d) {
      centroid[d] = (vertex_sum[d] - pts[worst][d]) / static_cast<double>(n);
      cand[d] = centroid[d] + alpha * (centroid[d] - pts[worst][d]);
    }
    const double f_refl = f(cand);
    ++res.evals;

    if (f_refl > vals[best]) {
      for (std::size_t d = 0; d < n; ++d)
        cand2[d] = centroid[d] + gamma * (cand[d] - centroid[d]);
      const double f_exp = f(cand2);
      ++res.evals;
      if (f_exp > f_refl)
        replace_vertex(worst, cand2, f_exp);
      else
        replace_vertex(worst, cand, f_refl);
      continue;
    }
    if (f_refl > vals[second_worst]) {
      replace_vertex(worst, cand, f_refl);
      continue;
    }

    const bool outside = f_refl > vals[worst];
    if (outside) {
      for (std::size_t d = 0; d < n; ++d)
        cand2[d] = centroid[d] + beta * (cand[d] - centroid[d]);
    } else {
      for (std::size_t d = 0; d < n; ++d)
        cand2[d] = centroid[d] - beta * (centroid[d] - pts[worst][d]);
    }
    const double f_con = f(cand2);
    ++res.evals;
    if ((outside && f_con >= f_refl) || (!outside && f_con > vals[worst])) {
      replace_vertex(worst, cand2, f_con);
      continue;
    }

    // Shrink toward the best vertex.
    for (std::size_t i = 0; i <= n; ++i) {
      if (i == best) continue;
      for (std::size_t d = 0; d < n; ++d)
        pts[i][d] = pts[best][d] + delta * (pts[i][d] - pts[best][d]);
      vals[i] = f(pts[i]);
      ++res.evals;
    }
    for (std::size_t d = 0; d < n; ++d) vertex_sum[d] = 0.0;
    for (std::size_t i = 0; i <= n; ++i)
      for (std::size_t d = 0; d < n; ++d) vertex_sum[d] += pts[i][d];
  }

  const std::size_t best =
      static_cast<std::size_t>(std::max_element(vals.begin(), vals.end()) - vals.begin());
  res.x = pts[best];
  res.value = vals[best];
  return res;
}

}  // namespace nlb
