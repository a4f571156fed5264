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

#include "nlb/search.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <thread>
#include <vector>

#include "nlb/errors.hpp"
#include "nlb/json_io.hpp"
#include "nlb/nelder_mead.hpp"
#include "nlb/rng.hpp"

namespace nlb {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kNonclassicalGap = 1e-7;
constexpr double kRestartAgreementTol = 1e-7;

double objective(const BellFunctional& f, double theta, double a0, double a1, double b0,
                 double b1) {
  const double s2 = std::sin(2.0 * theta);
  const double c2 = std::cos(2.0 * theta);
  const double ca[2] = {std::cos(a0), std::cos(a1)};
  const double sa[2] = {std::sin(a0), std::sin(a1)};
  const double cb[2] = {std::cos(b0), std::cos(b1)};
  const double sb[2] = {std::sin(b0), std::sin(b1)};
  double v = 0.0;
  for (int x = 0; x < 2; ++x) v += f.gA[x] * sa[x] * c2;
  for (int y = 0; y < 2; ++y) v += f.gB[y] * sb[y] * c2;
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y) v += f.gC[x][y] * (ca[x] * cb[y] * s2 + sa[x] * sb[y]);
  return v;
}

/** Angles realizing the best deterministic assignment exactly. */
std::array<double, 5> classical_seed_point(const BellFunctional& f) {
  double best = -1e300;
  std::array<double, 4> best_signs{};
  for (int mask = 0; mask < 16; ++mask) {
    const double a[2] = {(mask & 1) ? -1.0 : 1.0, (mask & 2) ? -1.0 : 1.0};
    const double b[2] = {(mask & 4) ? -1.0 : 1.0, (mask & 8) ? -1.0 : 1.0};
    double v = f.gA[0] * a[0] + f.gA[1] * a[1] + f.gB[0] * b[0] + f.gB[1] * b[1];
    for (int x = 0; x < 2; ++x)
      for (int y = 0; y < 2; ++y) v += f.gC[x][y] * a[x] * b[y];
    if (v > best) {
      best = v;
      best_signs = {a[0], a[1], b[0], b[1]};
    }
  }
  return {0.0, best_signs[0] * kPi / 2.0, best_signs[1] * kPi / 2.0, best_signs[2] * kPi / 2.0,
          best_signs[3] * kPi / 2.0};
}

}  // namespace

double BellFunctional::norm() const {
  double s = gA[0] * gA[0] + gA[1] * gA[1] + gB[0] * gB[0] + gB[1] * gB[1];
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y) s += gC[x][y] * gC[x][y];
  return std::sqrt(s);
}

void BellFunctional::normalize() {
  const double n = norm();
  if (n < 1e-300) throw DomainError("BellFunctional: cannot normalize the zero functional");
  for (auto& v : gA) v /= n;
  for (auto& v : gB) v /= n;
  for (auto& row : gC)
    for (auto& v : row) v /= n;
}

BellFunctional sample_functional(std::uint64_t seed) {
  Rng rng(seed);
  BellFunctional f;
  for (auto& v : f.gA) v = rng.normal();
  for (auto& v : f.gB) v = rng.normal();
  for (auto& row : f.gC)
    for (auto& v : row) v = rng.normal();
  f.normalize();
  return f;
}

double classical_max(const BellFunctional& f) {
  double best = -1e300;
  for (int mask = 0; mask < 16; ++mask) {
    const double a[2] = {(mask & 1) ? -1.0 : 1.0, (mask & 2) ? -1.0 : 1.0};
    const double b[2] = {(mask & 4) ? -1.0 : 1.0, (mask & 8) ? -1.0 : 1.0};
    double v = f.gA[0] * a[0] + f.gA[1] * a[1] + f.gB[0] * b[0] + f.gB[1] * b[1];
    for (int x = 0; x < 2; ++x)
      for (int y = 0; y < 2; ++y) v += f.gC[x][y] * a[x] * b[y];
    best = std::max(best, v);
  }
  return best;
}

double evaluate_functional(const BellFunctional& f, const Correlators& c) {
  double v = 0.0;
  for (int x = 0; x < 2; ++x) v += f.gA[x] * c.mA[x];
  for (int y = 0; y < 2; ++y) v += f.gB[y] * c.mB[y];
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y) v += f.gC[x][y] * c.C[x][y];
  return v;
}

SearchResult maximize_violation(const BellFunctional& f, int restarts, std::uint64_t seed,
                                std::optional<double> fixed_theta) {
  if (restarts < 16) throw DomainError("maximize_violation: restarts must be >= 16");

  const std::size_t dim = fixed_theta ? 4 : 5;
  const auto eval = [&](std::span<const double> x) {
    if (fixed_theta) return objective(f, *fixed_theta, x[0], x[1], x[2], x[3]);
    return objective(f, x[0], x[1], x[2], x[3], x[4]);
  };

  // Latin hypercube start points over [0, pi/4] x (-pi, pi]^4; restart 0 is
  // pinned at the best classical point.
  Rng rng(seed);
  std::vector<std::vector<double>> starts(static_cast<std::size_t>(restarts));
  {
    std::vector<std::vector<int>> strata(dim, std::vector<int>(restarts));
    for (std::size_t d = 0; d < dim; ++d) {
      for (int i = 0; i < restarts; ++i) strata[d][i] = i;
      for (int i = restarts - 1; i > 0; --i) {
        const int j = static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(i + 1));
        std::swap(strata[d][i], strata[d][j]);
      }
    }
    for (int i = 0; i < restarts; ++i) {
      std::vector<double> x(dim);
      for (std::size_t d = 0; d < dim; ++d) {
        const double frac = (strata[d][i] + rng.uniform01()) / restarts;
        const bool theta_coord = !fixed_theta && d == 0;
        x[d] = theta_coord ? frac * kPi / 4.0 : -kPi + 2.0 * kPi * frac;
      }
      starts[static_cast<std::size_t>(i)] = std::move(x);
    }
  }
  {
    const std::array<double, 5> cls = classical_seed_point(f);
    starts[0].assign(cls.begin() + (fixed_theta ? 1 : 0), cls.end());
  }

  NelderMeadOptions opts;
  opts.initial_scale = 0.5;
  opts.diameter_tol = 1e-11;
  opts.max_evals = 20000;

  std::vector<double> values(starts.size());
  std::vector<std::vector<double>> optima(starts.size());
  for (std::size_t i = 0; i < starts.size(); ++i) {
    const NelderMeadResult res = nelder_mead_maximize(eval, starts[i], opts);
    values[i] = res.value;
    optima[i] = res.x;
  }
  std::vector<std::size_t> order(values.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return values[a] > values[b]; });
  if (values.size() > 1 &&
      values[order[0]] - values[order[1]] > kRestartAgreementTol)
    throw ConvergenceFailure("maximize_violation: top restarts disagree by " +
                             std::to_string(values[order[0]] - values[order[1]]));

  const std::vector<double>& best = optima[order[0]];
  TwoQubitRealization realization =
      fixed_theta ? canonicalize(*fixed_theta, {best[0], best[1]}, {best[2], best[3]})
                  : canonicalize(best[0], {best[1], best[2]}, {best[3], best[4]});

  SearchResult result;
  result.functional = f;
  result.best_realization = realization;
  result.quantum_value = values[order[0]];
  result.classical_value = classical_max(f);
  result.nonclassical = result.quantum_value > result.classical_value + kNonclassicalGap;
  result.seed = seed;

  const LocalBloch bloch_b = extract_local_bloch(realization, Side::Bob);
  const LocalBloch bloch_a = extract_local_bloch(realization, Side::Alice);
  result.verdict_bob =
      saturation_condition_lenient(bloch_b, realization.bob_angles, kSaturationTolOptimizer);
  result.verdict_alice =
      saturation_condition_lenient(bloch_a, realization.alice_angles, kSaturationTolOptimizer);

  const GeneralRealization g = to_general(realization);
  const auto [behavior, corr] = evaluate_behavior(g);
  const DistanceProfile prof_b = distance_profile(g, Side::Bob);
  const DistanceProfile prof_a = distance_profile(g, Side::Alice);
  result.landau_margins = {
      extended_landau_margin(corr, prof_b, kSaturationTolOptimizer).margin,
      extended_landau_margin(transpose_correlators(corr), prof_a, kSaturationTolOptimizer)
          .margin};
  return result;
}

BatchSummary conjecture_batch(int n, std::uint64_t seed, const std::string& out_path,
                              std::ostream& fallback, int restarts) {
  if (n < 1) throw DomainError("conjecture_batch: n must be >= 1");

  std::size_t workers = std::thread::hardware_concurrency();
  if (workers == 0) workers = 1;
  if (const char* env = std::getenv("NONLOCAL_BOUNDS_THREADS")) {
    const long cap = std::strtol(env, nullptr, 10);
    if (cap > 0) workers = std::min<std::size_t>(workers, static_cast<std::size_t>(cap));
  }
  workers = std::min<std::size_t>(workers, static_cast<std::size_t>(n));

  struct Record {
    std::string line;
    bool nonclassical = false;
    bool satisfied = false;
    bool convergence_failure = false;
    double landau_margin = 0.0;
  };
  std::vector<Record> records(static_cast<std::size_t>(n));
  std::atomic<int> next{0};

  const auto worker = [&] {
    for (;;) {
      const int i = next.fetch_add(1);
      if (i >= n) return;
      const std::uint64_t item_seed = mix_seed(seed, static_cast<std::uint64_t>(i));
      const BellFunctional f = sample_functional(item_seed);
      Record& rec = records[static_cast<std::size_t>(i)];
      SearchResult res;
      try {
        try {
          res = maximize_violation(f, restarts, item_seed);
        } catch (const ConvergenceFailure&) {
          // One retry with a denser restart schedule before giving up.
          res = maximize_violation(f, restarts * 4, mix_seed(item_seed, 1));
        }
      } catch (const ConvergenceFailure& e) {
        rec.convergence_failure = true;
        Json j{{"index", i}, {"seed", item_seed}, {"convergence_failure", e.what()},
               {"functional", functional_to_json(f)}};
        rec.line = j.dump();
        continue;
      }
      rec.nonclassical = res.nonclassical;
      rec.satisfied = res.verdict_bob.satisfied && res.verdict_alice.satisfied;
      rec.landau_margin = std::max(res.landau_margins[0], res.landau_margins[1]);
      Json j = search_result_to_json(res);
      j["index"] = i;
      j["both_conditions_satisfied"] = rec.satisfied;
      if (res.nonclassical && !rec.satisfied) j["counterexample"] = true;
      rec.line = j.dump();
    }
  };

  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  BatchSummary summary;
  summary.n = n;
  std::ostringstream body;
  for (const Record& rec : records) {
    body << rec.line << '\n';
    if (rec.convergence_failure) {
      ++summary.n_convergence_failures;
      continue;
    }
    if (rec.nonclassical) {
      ++summary.n_nonclassical;
      if (rec.satisfied) ++summary.n_satisfied;
      summary.max_landau_margin = std::max(summary.max_landau_margin, rec.landau_margin);
    }
  }
  if (out_path.empty())
    fallback << body.str();
  else
    atomic_write_file(out_path, body.str());
  return summary;
}

}  // namespace nlb
