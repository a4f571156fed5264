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

#include "nlb/json_io.hpp"

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>

#include "nlb/errors.hpp"

namespace nlb {

namespace {

Json cmatrix_to_json(const CMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.dim(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.dim(); ++j)
      row.push_back(Json::array({m(i, j).real(), m(i, j).imag()}));
    rows.push_back(std::move(row));
  }
  return rows;
}

CMatrix cmatrix_from_json(const Json& j) {
  const std::size_t n = j.size();
  CMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (j[i].size() != n) throw IoError("matrix JSON is not square");
    for (std::size_t k = 0; k < n; ++k)
      m(i, k) = Complex(j[i][k][0].get<double>(), j[i][k][1].get<double>());
  }
  return m;
}

}  // namespace

Json realization_to_json(const TwoQubitRealization& r) {
  return Json{{"theta", r.schmidt_angle},
              {"thetaA", {r.alice_angles[0], r.alice_angles[1]}},
              {"thetaB", {r.bob_angles[0], r.bob_angles[1]}}};
}

TwoQubitRealization realization_from_json(const Json& j) {
  TwoQubitRealization r;
  r.schmidt_angle = j.at("theta").get<double>();
  r.alice_angles = {j.at("thetaA")[0].get<double>(), j.at("thetaA")[1].get<double>()};
  r.bob_angles = {j.at("thetaB")[0].get<double>(), j.at("thetaB")[1].get<double>()};
  return r;
}

Json general_realization_to_json(const GeneralRealization& r) {
  return Json{{"dimA", r.dim_a},
              {"dimB", r.dim_b},
              {"state", cmatrix_to_json(r.state)},
              {"aliceObs", {cmatrix_to_json(r.alice_obs[0]), cmatrix_to_json(r.alice_obs[1])}},
              {"bobObs", {cmatrix_to_json(r.bob_obs[0]), cmatrix_to_json(r.bob_obs[1])}}};
}

GeneralRealization general_realization_from_json(const Json& j) {
  GeneralRealization r;
  r.dim_a = j.at("dimA").get<std::size_t>();
  r.dim_b = j.at("dimB").get<std::size_t>();
  r.state = cmatrix_from_json(j.at("state"));
  r.alice_obs = {cmatrix_from_json(j.at("aliceObs")[0]), cmatrix_from_json(j.at("aliceObs")[1])};
  r.bob_obs = {cmatrix_from_json(j.at("bobObs")[0]), cmatrix_from_json(j.at("bobObs")[1])};
  if (r.state.dim() != r.dim_a * r.dim_b) throw IoError("realization state dimension mismatch");
  return r;
}

Json profile_to_json(const DistanceProfile& p) {
  Json j{{"side", p.side == Side::Bob ? "bob" : "alice"},
         {"dbar", {p.dbar[0], p.dbar[1]}},
         {"dtilde", {p.dtilde[0], p.dtilde[1]}}};
  if (p.dtilde_eps) j["dtildeEps"] = {(*p.dtilde_eps)[0], (*p.dtilde_eps)[1]};
  return j;
}

Json report_to_json(const InequalityReport& r) {
  return Json{{"name", inequality_name(r.name)}, {"lhs", r.lhs},
              {"rhs", r.rhs},                    {"margin", r.margin},
              {"saturated", r.saturated},        {"inputs_digest", r.inputs_digest}};
}

Json functional_to_json(const BellFunctional& f) {
  return Json{{"gA", {f.gA[0], f.gA[1]}},
              {"gB", {f.gB[0], f.gB[1]}},
              {"gC", {{f.gC[0][0], f.gC[0][1]}, {f.gC[1][0], f.gC[1][1]}}}};
}

Json verdict_to_json(const SaturationVerdict& v) {
  Json j{{"product_value", v.product_value}, {"satisfied", v.satisfied}};
  if (v.u_weights)
    j["u_weights"] = {(*v.u_weights)[0], (*v.u_weights)[1], (*v.u_weights)[2],
                      (*v.u_weights)[3]};
  return j;
}

Json search_result_to_json(const SearchResult& r) {
  return Json{{"functional", functional_to_json(r.functional)},
              {"best_realization", realization_to_json(r.best_realization)},
              {"quantum_value", r.quantum_value},
              {"classical_value", r.classical_value},
              {"nonclassical", r.nonclassical},
              {"verdict_bob", verdict_to_json(r.verdict_bob)},
              {"verdict_alice", verdict_to_json(r.verdict_alice)},
              {"landau_margins", {r.landau_margins[0], r.landau_margins[1]}},
              {"seed", r.seed}};
}

TwoQubitRealization load_realization(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open realization file: " + path);
  Json j;
  try {
    in >> j;
    return realization_from_json(j);
  } catch (const nlohmann::json::exception& e) {
    throw IoError("cannot parse realization file " + path + ": " + e.what());
  }
}

void atomic_write_file(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open for writing: " + tmp);
    out << content;
    if (!out) throw IoError("write failed: " + tmp);
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw IoError("rename to " + path + " failed: " + ec.message());
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  // Trim to the shortest representation that still round-trips.
  for (int prec = 1; prec < 17; ++prec) {
    char shorter[40];
    std::snprintf(shorter, sizeof(shorter), "%.*g", prec, v);
    if (std::strtod(shorter, nullptr) == v) return shorter;
  }
  return buf;
}

}  // namespace nlb
