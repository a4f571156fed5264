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

#include <cmath>
#include <cstdio>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nlb/bounds.hpp"
#include "nlb/core.hpp"
#include "nlb/distance.hpp"
#include "nlb/errors.hpp"
#include "nlb/extremal.hpp"
#include "nlb/json_io.hpp"
#include "nlb/protocol.hpp"
#include "nlb/search.hpp"

namespace {

using namespace nlb;

constexpr double kPi = std::numbers::pi;

constexpr int kExitOk = 0;
constexpr int kExitFixtureFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

void emit(const std::string& out_path, const std::string& content) {
  if (out_path.empty())
    std::cout << content;
  else
    atomic_write_file(out_path, content);
}

struct FixtureRow {
  std::string name;
  std::string expected;
  std::string actual;
  bool pass = false;
};

int cmd_verify_paper(double tolerance, double optimizer_tol, std::uint64_t seed) {
  std::vector<FixtureRow> rows;
  const auto add = [&rows](const std::string& name, double expected, double actual,
                           double tol) {
    rows.push_back({name, format_double(expected), format_double(actual),
                    std::abs(expected - actual) <= tol});
  };

  // Quantum maximum of the plain correlator functional.
  BellFunctional chsh;
  chsh.gC = {{{1.0, 1.0}, {1.0, -1.0}}};
  const SearchResult free_opt = maximize_violation(chsh, 64, seed);
  add("chsh-quantum-maximum", 2.8284271247461903, free_opt.quantum_value, optimizer_tol);

  // Reduced maximum on the fixed partially entangled state, against the
  // two-term bound of the matching analytic realization.
  const double theta_ref = std::acos(std::sqrt(2.0 / 3.0));
  const SearchResult fixed_opt = maximize_violation(chsh, 64, seed, theta_ref);
  add("reduced-state-maximum", 2.7487370837451071, fixed_opt.quantum_value, optimizer_tol);
  const TiltedFamilyPoint boundary = boundary_example();
  {
    const GeneralRealization g = to_general(boundary.realization);
    const auto [behavior, corr] = evaluate_behavior(g);
    const InequalityReport rep =
        tsirelson_bound(corr, distance_profile(g, Side::Bob), WeightSet{});
    add("reduced-state-bound-rhs", 2.7487370837451071, rep.rhs, tolerance);
  }

  // Boundary correlator table.
  {
    const GeneralRealization g = to_general(boundary.realization);
    const auto [behavior, corr] = evaluate_behavior(g);
    add("boundary-marginal-a0", 1.0 / 3.0, corr.mA[0], tolerance);
    add("boundary-marginal-a1", 0.0, corr.mA[1], tolerance);
    add("boundary-marginal-b", 0.24253562503633297, corr.mB[0], tolerance);
    add("boundary-correlator-c00", 0.72760687510899891, corr.C[0][0], tolerance);
    add("boundary-correlator-c10", 0.64676166676355462, corr.C[1][0], tolerance);
    add("boundary-correlator-c11", -0.64676166676355462, corr.C[1][1], tolerance);

    const DistanceProfile prof = distance_profile(g, Side::Bob);
    add("boundary-dtilde-0", 1.0, prof.dtilde[0], tolerance);
    add("boundary-dtilde-1", 0.94280904158206347, prof.dtilde[1], tolerance);

    const InequalityReport ic = ic_type_check(corr, prof);
    add("quarter-circle-lhs", 17.0 / 18.0, ic.lhs, tolerance);
    add("quarter-circle-rhs", 17.0 / 18.0, ic.rhs, tolerance);
  }

  // Landau-form saturation across the tilted-family grid.
  {
    double worst = 0.0;
    for (int i = 0; i < 20; ++i)
      for (int j = 0; j < 20; ++j) {
        const double alpha = 0.1 + (2.0 - 0.1) * i / 19.0;
        const double theta = (j + 1) * (kPi / 4.0) / 20.0;
        const GeneralRealization g = to_general(tilted_family(alpha, theta).realization);
        const auto [behavior, corr] = evaluate_behavior(g);
        const InequalityReport rep =
            extended_landau_margin(corr, distance_profile(g, Side::Bob));
        worst = std::max(worst, std::abs(rep.margin));
      }
    add("tilted-grid-landau-margin", 0.0, worst, tolerance);
  }

  // Alignment verdict of the boundary realization.
  {
    const LocalBloch bloch = extract_local_bloch(boundary.realization, Side::Bob);
    const SaturationVerdict verdict =
        saturation_condition(bloch, boundary.realization.bob_angles);
    rows.push_back({"boundary-alignment-satisfied", "true",
                    verdict.satisfied ? "true" : "false", verdict.satisfied});
    if (verdict.u_weights) {
      double udev = 0.0;
      for (const double u : *verdict.u_weights) udev = std::max(udev, std::abs(u - 1.0));
      add("boundary-alignment-weights", 0.0, udev, tolerance);
    }
  }

  bool all_pass = true;
  std::ostringstream table;
  for (const FixtureRow& row : rows) {
    all_pass = all_pass && row.pass;
    char line[256];
    std::snprintf(line, sizeof(line), "%-32s  expected %-22s actual %-22s %s\n",
                  row.name.c_str(), row.expected.c_str(), row.actual.c_str(),
                  row.pass ? "PASS" : "FAIL");
    table << line;
  }
  table << (all_pass ? "all fixtures passed\n" : "fixture failure\n");
  std::cout << table.str();
  if (!all_pass) {
    for (const FixtureRow& row : rows)
      if (!row.pass) {
        std::cerr << "first failing fixture: " << row.name << "\n";
        break;
      }
    return kExitFixtureFailure;
  }
  return kExitOk;
}

int cmd_dtilde(const std::string& realization_path, const std::string& side_name,
               const std::vector<double>& eps, const std::string& out_path) {
  const TwoQubitRealization r = load_realization(realization_path);
  const Side side = side_name == "alice" ? Side::Alice : Side::Bob;
  std::optional<std::array<double, 2>> eps_pair;
  if (!eps.empty()) {
    if (eps.size() != 2) throw DomainError("--eps expects two comma-separated values");
    eps_pair = std::array<double, 2>{eps[0], eps[1]};
  }
  const DistanceProfile prof = distance_profile(to_general(r), side, eps_pair);
  emit(out_path, profile_to_json(prof).dump(2) + "\n");
  return kExitOk;
}

int cmd_bounds(const std::string& realization_path, const std::string& out_path) {
  const TwoQubitRealization r = load_realization(realization_path);
  const GeneralRealization g = to_general(r);
  const auto [behavior, corr] = evaluate_behavior(g);
  const DistanceProfile prof = distance_profile(g, Side::Bob);

  Json reports = Json::array();
  reports.push_back(report_to_json(tsirelson_bound(corr, prof, WeightSet{})));
  reports.push_back(report_to_json(ic_type_check(corr, prof)));
  reports.push_back(report_to_json(weighted_chsh_check(corr, prof, WeightSet{})));
  reports.push_back(report_to_json(extended_landau_margin(corr, prof)));
  reports.push_back(report_to_json(classic_landau_margin(corr)));
  try {
    reports.push_back(report_to_json(npa_type_margin(corr, prof)));
  } catch (const DegenerateMarginals& e) {
    reports.push_back(Json{{"name", "NPAtypeB4"}, {"degenerate", e.what()}});
  }
  emit(out_path, reports.dump(2) + "\n");
  return kExitOk;
}

int cmd_tilted_sweep(double alpha_min, double alpha_max, int alpha_steps, int theta_steps,
                     const std::string& out_path) {
  if (alpha_steps < 1 || theta_steps < 1 || !(alpha_min > 0.0) || alpha_max < alpha_min)
    throw DomainError("tilted-sweep: invalid grid");
  std::ostringstream csv;
  csv << "alpha,theta,dtilde0,dtilde1,landau_lhs,landau_rhs,landau_margin\n";
  for (int i = 0; i < alpha_steps; ++i)
    for (int j = 0; j < theta_steps; ++j) {
      const double alpha =
          alpha_steps == 1 ? alpha_min
                           : alpha_min + (alpha_max - alpha_min) * i / (alpha_steps - 1.0);
      const double theta = (j + 1) * (kPi / 4.0) / theta_steps;
      const GeneralRealization g = to_general(tilted_family(alpha, theta).realization);
      const auto [behavior, corr] = evaluate_behavior(g);
      const DistanceProfile prof = distance_profile(g, Side::Bob);
      const InequalityReport rep = extended_landau_margin(corr, prof);
      csv << format_double(alpha) << ',' << format_double(theta) << ','
          << format_double(prof.dtilde[0]) << ',' << format_double(prof.dtilde[1]) << ','
          << format_double(rep.lhs) << ',' << format_double(rep.rhs) << ','
          << format_double(rep.margin) << '\n';
    }
  emit(out_path, csv.str());
  return kExitOk;
}

int cmd_mixing(const std::vector<double>& lambdas, const std::string& realization_path,
               const std::string& out_path) {
  TwoQubitRealization r;
  if (realization_path.empty()) {
    r.schmidt_angle = kPi / 4.0;
    r.alice_angles = {0.0, kPi / 2.0};
    r.bob_angles = {kPi / 4.0, -kPi / 4.0};
  } else {
    r = load_realization(realization_path);
  }
  const auto rows = mixing_experiment(r, lambdas);
  std::ostringstream csv;
  csv << "lambda,x,dtilde_measured,dtilde_paper_linear,dtilde_blockform,landau_margin\n";
  for (const MixingRow& row : rows)
    csv << format_double(row.lambda) << ',' << row.x << ','
        << format_double(row.dtilde_measured) << ',' << format_double(row.dtilde_paper_linear)
        << ',' << format_double(row.dtilde_blockform) << ','
        << format_double(row.landau_margin) << '\n';
  emit(out_path, csv.str());
  return kExitOk;
}

int cmd_search(int n, std::uint64_t seed, int restarts, const std::string& out_path) {
  const BatchSummary summary = conjecture_batch(n, seed, out_path, std::cout, restarts);
  const Json j{{"n", summary.n},
               {"n_nonclassical", summary.n_nonclassical},
               {"n_satisfied", summary.n_satisfied},
               {"n_convergence_failures", summary.n_convergence_failures},
               {"max_landau_margin", summary.max_landau_margin}};
  std::cout << j.dump() << "\n";
  return kExitOk;
}

int cmd_protocol(const std::string& realization_path, std::optional<double> theta,
                 const std::vector<double>& angles, int n_max, const std::string& out_path) {
  TwoQubitRealization r;
  if (!realization_path.empty()) {
    r = load_realization(realization_path);
  } else if (theta) {
    if (angles.size() != 4)
      throw DomainError("--angles expects four comma-separated values (a0,a1,b0,b1)");
    r.schmidt_angle = *theta;
    r.alice_angles = {angles[0], angles[1]};
    r.bob_angles = {angles[2], angles[3]};
  } else {
    r = boundary_example().realization;
  }
  const BoxModel box = box_model(r);
  const auto rows = protocol_sweep(box, n_max);
  if (!rows.empty() && !rows.front().asymptotic_valid)
    std::cerr << "note: box is outside the validity region of the asymptotic formula\n";
  std::ostringstream csv;
  csv << "n,lhs,rhs,info_exact,info_asymptotic\n";
  for (const ParityProtocolReport& rep : rows)
    csv << rep.n << ',' << format_double(rep.lhs) << ',' << format_double(rep.rhs) << ','
        << format_double(rep.info_exact) << ',' << format_double(rep.info_asymptotic) << '\n';
  emit(out_path, csv.str());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bipartite nonlocality bounds with state-dependent distance quantities"};
  app.require_subcommand(1);

  // verify-paper
  auto* verify = app.add_subcommand("verify-paper", "Run the built-in fixture table");
  double tolerance = 1e-9, optimizer_tol = 1e-6;
  std::uint64_t verify_seed = 1;
  verify->add_option("--tolerance", tolerance, "Tolerance for analytic fixtures");
  verify->add_option("--optimizer-tol", optimizer_tol, "Tolerance for optimizer fixtures");
  verify->add_option("--seed", verify_seed, "Optimizer seed");

  // dtilde
  auto* dtilde_cmd = app.add_subcommand("dtilde", "Distance profile of a realization");
  std::string dt_realization, dt_side = "bob", dt_out;
  std::vector<double> dt_eps;
  dtilde_cmd->add_option("--realization", dt_realization, "Realization JSON file")
      ->required();
  dtilde_cmd->add_option("--side", dt_side, "alice or bob")
      ->check(CLI::IsMember({"alice", "bob"}));
  dtilde_cmd->add_option("--eps", dt_eps, "Tilt parameters eps0,eps1")->delimiter(',');
  dtilde_cmd->add_option("--out", dt_out, "Output file (default stdout)");

  // bounds
  auto* bounds_cmd = app.add_subcommand("bounds", "Evaluate the inequality reports");
  std::string b_realization, b_out;
  bounds_cmd->add_option("--realization", b_realization, "Realization JSON file")->required();
  bounds_cmd->add_option("--out", b_out, "Output file (default stdout)");

  // tilted-sweep
  auto* sweep_cmd = app.add_subcommand("tilted-sweep", "CSV sweep of the analytic family");
  double alpha_min = 0.1, alpha_max = 2.0;
  int alpha_steps = 20, theta_steps = 20;
  std::string sweep_out;
  sweep_cmd->add_option("--alpha-min", alpha_min);
  sweep_cmd->add_option("--alpha-max", alpha_max);
  sweep_cmd->add_option("--alpha-steps", alpha_steps);
  sweep_cmd->add_option("--theta-steps", theta_steps);
  sweep_cmd->add_option("--out", sweep_out, "Output file (default stdout)");

  // mixing
  auto* mixing_cmd = app.add_subcommand("mixing", "Noise-mixture comparison table");
  std::vector<double> lambdas{0.0, 0.25, 0.5, 0.75, 1.0};
  std::string m_realization, m_out;
  mixing_cmd->add_option("--lambdas", lambdas, "Mixing weights")->delimiter(',');
  mixing_cmd->add_option("--realization", m_realization,
                         "Base realization JSON (default: maximally entangled optimum)");
  mixing_cmd->add_option("--out", m_out, "Output file (default stdout)");

  // search
  auto* search_cmd = app.add_subcommand("search", "Random-functional batch experiment");
  int n = 100, restarts = 64;
  std::uint64_t seed = 1;
  std::string s_out;
  search_cmd->add_option("--n", n, "Number of functionals")->required();
  search_cmd->add_option("--seed", seed, "Batch seed");
  search_cmd->add_option("--restarts", restarts, "Optimizer restarts per functional");
  search_cmd->add_option("--out", s_out, "JSON-lines output file (default stdout)");

  // protocol
  auto* protocol_cmd = app.add_subcommand("protocol", "Parity-protocol sweep CSV");
  std::string p_realization, p_out;
  std::optional<double> p_theta;
  std::vector<double> p_angles;
  int n_max = 10;
  protocol_cmd->add_option("--realization", p_realization, "Realization JSON file");
  protocol_cmd->add_option("--theta", p_theta, "Schmidt angle");
  protocol_cmd->add_option("--angles", p_angles, "a0,a1,b0,b1")->delimiter(',');
  protocol_cmd->add_option("--n-max", n_max, "Largest box count");
  protocol_cmd->add_option("--out", p_out, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (verify->parsed()) return cmd_verify_paper(tolerance, optimizer_tol, verify_seed);
    if (dtilde_cmd->parsed()) return cmd_dtilde(dt_realization, dt_side, dt_eps, dt_out);
    if (bounds_cmd->parsed()) return cmd_bounds(b_realization, b_out);
    if (sweep_cmd->parsed())
      return cmd_tilted_sweep(alpha_min, alpha_max, alpha_steps, theta_steps, sweep_out);
    if (mixing_cmd->parsed()) return cmd_mixing(lambdas, m_realization, m_out);
    if (search_cmd->parsed()) return cmd_search(n, seed, restarts, s_out);
    if (protocol_cmd->parsed())
      return cmd_protocol(p_realization, p_theta, p_angles, n_max, p_out);
  } catch (const IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return kExitIo;
  } catch (const DomainError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  }
  return kExitUsage;
}
