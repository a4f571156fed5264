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

#include <string>

#include <json.hpp>

#include "nlb/bounds.hpp"
#include "nlb/core.hpp"
#include "nlb/distance.hpp"
#include "nlb/extremal.hpp"
#include "nlb/search.hpp"

namespace nlb {

using Json = nlohmann::ordered_json;

Json realization_to_json(const TwoQubitRealization& r);
TwoQubitRealization realization_from_json(const Json& j);

Json general_realization_to_json(const GeneralRealization& r);
GeneralRealization general_realization_from_json(const Json& j);

Json profile_to_json(const DistanceProfile& p);
Json report_to_json(const InequalityReport& r);
Json functional_to_json(const BellFunctional& f);
Json verdict_to_json(const SaturationVerdict& v);
Json search_result_to_json(const SearchResult& r);

/** Reads a two-qubit realization from a JSON file; throws IoError. */
TwoQubitRealization load_realization(const std::string& path);

/** Writes content to path atomically (temp file + rename); throws IoError. */
void atomic_write_file(const std::string& path, const std::string& content);

/** Shortest-roundtrip decimal formatting used in all CSV output. */
std::string format_double(double v);

}  // namespace nlb
