// Copyright 2026 The tcs Authors
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

#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "tcs/graph.hpp"
#include "tcs/nullifier.hpp"
#include "tcs/pipeline.hpp"

namespace tcs {

using Json = nlohmann::ordered_json;

inline constexpr double kNullifierTolerance = 1e-9;
inline constexpr double kEquivalenceTolerance = 1e-9;

struct Check {
  std::string name;
  bool pass = false;
  double value = 0.0;
  double tolerance = 0.0;
};

bool all_pass(const std::vector<Check>& checks);

Json config_json(const PipelineConfig& config);
Json checks_json(const std::vector<Check>& checks);
Json record_json(const MeasurementRecordd& record);

/// Pass/fail checks for a pipeline run. Verify mode adds the nullifier and
/// physicality checks; the live-mode ceiling is checked in both modes.
std::vector<Check> run_checks(const PipelineConfig& config, const RunReport& report);

/// Report for `wire` / `lattice`. Keys: config, high_water, nullifiers,
/// [records], checks.
Json run_report_json(const PipelineConfig& config, const RunReport& report,
                     const std::vector<Check>& checks, bool emit_records);

/// Header `node,variance`, one row per node, shortest round-trip decimals.
void write_nullifier_csv(std::ostream& os, const std::vector<NodeVariance<double>>& rows);

/// Shortest decimal that round-trips to `x`.
std::string format_double(double x);

}  // namespace tcs
