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

#include "tcs/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "tcs/physicality.hpp"

namespace tcs {

bool all_pass(const std::vector<Check>& checks) {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

Json config_json(const PipelineConfig& config) {
  Json j;
  j["topology"] = to_string(config.topology);
  j["nodes"] = config.nodes;
  j["width"] = config.topology == Topology::lattice ? config.width : 0;
  j["squeezing_r"] = config.squeezing;
  j["squeezing_db"] = db_from_squeezing(config.squeezing);
  j["mode"] = to_string(config.mode);
  j["seed"] = config.seed;
  j["window"] = config.verify_window();
  return j;
}

Json checks_json(const std::vector<Check>& checks) {
  Json arr = Json::array();
  for (const auto& c : checks) {
    arr.push_back({{"name", c.name}, {"pass", c.pass}, {"value", c.value}, {"tolerance", c.tolerance}});
  }
  return arr;
}

Json record_json(const MeasurementRecordd& record) {
  Json ff = Json::array();
  for (Index i = 0; i < record.feedforward.size(); ++i) ff.push_back(record.feedforward(i));
  return {{"node", record.node}, {"angle", record.angle}, {"outcome", record.outcome}, {"feedforward", ff}};
}

std::vector<Check> run_checks(const PipelineConfig& config, const RunReport& report) {
  std::vector<Check> checks;
  if (config.mode == RunMode::verify) {
    const double target = std::exp(-2.0 * config.squeezing) / 2.0;
    double worst = 0.0;
    for (const auto& nv : report.nullifier_checks) worst = std::max(worst, std::abs(nv.variance - target));
    checks.push_back({"nullifier_variance", worst <= kNullifierTolerance, worst, kNullifierTolerance});

    const double floor = kVacuumVariance - kPhysicalityTolerance;
    const double msv = std::isfinite(report.min_symplectic_eigenvalue) ? report.min_symplectic_eigenvalue
                                                                         : kVacuumVariance;
    checks.push_back({"min_symplectic_eigenvalue", msv >= floor, msv, kPhysicalityTolerance});
  }
  const auto bound = static_cast<double>(config.high_water_bound());
  checks.push_back({"high_water", static_cast<double>(report.high_water) <= bound,
                    static_cast<double>(report.high_water), bound});
  return checks;
}

Json run_report_json(const PipelineConfig& config, const RunReport& report,
                     const std::vector<Check>& checks, bool emit_records) {
  Json j;
  j["config"] = config_json(config);
  j["high_water"] = report.high_water;
  Json nulls = Json::array();
  for (const auto& nv : report.nullifier_checks) nulls.push_back({{"node", nv.node}, {"variance", nv.variance}});
  j["nullifiers"] = std::move(nulls);
  if (emit_records) {
    Json recs = Json::array();
    for (const auto& r : report.records) recs.push_back(record_json(r));
    j["records"] = std::move(recs);
  }
  j["checks"] = checks_json(checks);
  return j;
}

std::string format_double(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

void write_nullifier_csv(std::ostream& os, const std::vector<NodeVariance<double>>& rows) {
  os << "node,variance\n";
  for (const auto& nv : rows) os << nv.node << ',' << format_double(nv.variance) << '\n';
}

}  // namespace tcs
