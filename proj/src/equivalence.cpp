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

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>

#include "tcs/canonical.hpp"
#include "tcs/pipeline.hpp"

namespace tcs {

EquivalenceResult equivalence_check(PipelineConfig config, Label first, Label last) {
  config.mode = RunMode::verify;
  config.validate();
  if (first < 1 || last > config.nodes || first > last) {
    throw std::invalid_argument("equivalence_check: range " + std::to_string(first) + ".." +
                                std::to_string(last) + " is not inside 1..N");
  }
  const std::int64_t reach = 2 * config.verify_window() + 1;
  if (last - first + 1 > reach) {
    throw std::invalid_argument("equivalence_check: range too wide for window (at most " +
                                std::to_string(reach) + " nodes)");
  }

  Pipeline pipeline(config);
  for (Label j = first; j <= last; ++j) pipeline.hold(j);

  // Every CZ touching the range is done once `last` reaches the detector.
  const std::int64_t snapshot_tick = config.exit_tick(last);
  while (!pipeline.done()) {
    pipeline.step_tick();
    if (pipeline.tick() >= snapshot_tick) break;
  }
  const GaussianStated live = pipeline.snapshot_window();

  // Oracle: canonical construction on every pulse emitted so far, vacuum on
  // the ancillas, then the run's own detections replayed in order.
  const Graph extended = extended_pipeline_graph(config);
  std::vector<Label> emitted = ancilla_labels(config);
  for (Label j = 1; j <= std::min<std::int64_t>(snapshot_tick, config.nodes); ++j) emitted.push_back(j);
  const double r = config.squeezing;
  auto oracle = build_canonical_cluster<double>(extended.induced(emitted),
                                                [r](Label l) { return l <= 0 ? 0.0 : r; });
  for (const auto& rec : pipeline.report().records) {
    oracle = measure_quadrature(oracle, rec.node, rec.angle, rec.outcome).state;
  }

  std::vector<Label> drop_live, drop_oracle;
  for (Label l : live.labels())
    if (l < first || l > last) drop_live.push_back(l);
  for (Label l : oracle.labels())
    if (l < first || l > last) drop_oracle.push_back(l);
  const auto live_range = trace_out(live, drop_live);
  const auto oracle_range = trace_out(oracle, drop_oracle);

  EquivalenceResult res;
  res.snapshot_tick = snapshot_tick;
  res.compared = live_range.labels();
  std::sort(res.compared.begin(), res.compared.end());
  const auto d = max_discrepancy(live_range, oracle_range);
  res.max_cov_discrepancy = d.cov;
  res.max_mean_discrepancy = d.mean;

  pipeline.release_held();
  pipeline.run();
  return res;
}

}  // namespace tcs
