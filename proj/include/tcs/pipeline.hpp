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

#include <cstdint>
#include <deque>
#include <limits>
#include <map>
#include <optional>
#include <ostream>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "tcs/gaussian_state.hpp"
#include "tcs/graph.hpp"
#include "tcs/measurement.hpp"
#include "tcs/nullifier.hpp"

namespace tcs {

enum class Topology { wire, lattice };
enum class RunMode { compute, verify };

std::string to_string(Topology t);
std::string to_string(RunMode m);

/// Streaming experiment: one squeezer emitting pulse i at tick i into a
/// single CZ gate. The wire uses one loop (span 1). The lattice diverts each
/// pulse after its inner-loop pass into an outer loop of span `width`, so it
/// meets the gate a second time next to the pulse `width` ticks later.
struct PipelineConfig {
  Topology topology = Topology::wire;
  std::int64_t nodes = 0;
  std::int64_t width = 0;  // lattice only
  double squeezing = 0.0;  // r, var(p) = e^{-2r}/2
  RunMode mode = RunMode::compute;
  std::optional<std::int64_t> window;  // verify-window half-width
  std::map<Label, double> program;     // homodyne angle per node; absent means q
  std::uint64_t seed = 0;

  /// Throws std::invalid_argument on a malformed configuration.
  void validate() const;

  /// Distance between linked pulses on the longest loop: 1 (wire) or width.
  std::int64_t loop_span() const;
  std::int64_t verify_window() const;

  /// Ticks run from 0 (loop-resident vacua) to last_tick() (last node exits).
  std::int64_t last_tick() const;
  /// Tick at which `node` leaves the gate for the detector.
  std::int64_t exit_tick(Label node) const;
  /// Live-mode ceiling: loop_span() + 2.
  std::int64_t high_water_bound() const;
};

/// Labels of the vacuum pulses resident in the loops before tick 1.
std::vector<Label> ancilla_labels(const PipelineConfig& config);
/// First stripe: contaminated by the vacuum ancillas, deleted by q-measurement.
std::set<Label> leading_boundary(const PipelineConfig& config);
/// Final stripe: no successors once emission stops; measured in q.
std::set<Label> trailing_boundary(const PipelineConfig& config);

/// Target cluster graph on the emitted nodes 1..N.
Graph pipeline_graph(const PipelineConfig& config);
/// The graph the gate actually writes, including the vacuum ancillas.
Graph extended_pipeline_graph(const PipelineConfig& config);
/// Neighbours of `node` in extended_pipeline_graph, from the routing rule.
std::set<Label> extended_neighbors(const PipelineConfig& config, Label node);

enum class EventKind { emit, cz, divert, measure, trace };
std::string to_string(EventKind k);

struct PipelineEvent {
  std::int64_t tick = 0;
  EventKind kind = EventKind::emit;
  Label a = 0;
  Label b = 0;  // cz partner; unused otherwise

  friend bool operator==(const PipelineEvent&, const PipelineEvent&) = default;
};

/// Events of one tick, ordered emit -> cz/divert -> measure/trace.
std::vector<PipelineEvent> tick_events(const PipelineConfig& config, std::int64_t tick);
std::vector<PipelineEvent> build_schedule(const PipelineConfig& config);

/// One line per event: `tick kind labels...`.
void write_event_log(std::ostream& os, const std::vector<PipelineEvent>& events);

struct RunReport {
  std::vector<MeasurementRecordd> records;
  std::int64_t high_water = 0;
  std::vector<NodeVariance<double>> nullifier_checks;  // verify mode only
  std::vector<Label> boundary_deleted;
  std::vector<Label> traced;
  // Tracked in verify mode only.
  double min_symplectic_eigenvalue = std::numeric_limits<double>::infinity();
};

enum class Loop { inner, outer };

/// Step-wise executor of the schedule against a single live register.
class Pipeline {
 public:
  explicit Pipeline(PipelineConfig config);

  const PipelineConfig& config() const { return config_; }

  /// Tick currently executing, or the next one if between ticks.
  std::int64_t tick() const { return current_tick_; }
  bool done() const { return pending_.empty() && next_tick_ > config_.last_tick(); }
  std::optional<PipelineEvent> peek();

  void step_event();
  void step_tick();
  /// Runs to completion and releases any held nodes.
  void run();

  /// Defers the measurement of `node` until release_held().
  void hold(Label node);
  void release_held();
  const std::vector<Label>& held() const { return held_; }

  /// Copy of the live register.
  GaussianStated snapshot_window() const { return state_; }
  std::int64_t live_modes() const { return state_.num_modes(); }
  std::optional<Loop> loop_of(Label node) const;

  const RunReport& report() const { return report_; }

 private:
  void refill();
  void execute(const PipelineEvent& ev);
  void measure_node(Label node);

  PipelineConfig config_;
  GaussianStated state_;
  std::mt19937_64 rng_;
  std::int64_t next_tick_ = 0;
  std::int64_t current_tick_ = 0;
  std::deque<PipelineEvent> pending_;
  std::set<Label> hold_;
  std::vector<Label> held_;
  std::map<Label, Loop> route_;
  std::set<Label> leading_;
  std::set<Label> trailing_;
  RunReport report_;
};

RunReport run_pipeline(const PipelineConfig& config);

struct EquivalenceResult {
  double max_cov_discrepancy = 0.0;
  double max_mean_discrepancy = 0.0;
  std::int64_t snapshot_tick = 0;
  std::vector<Label> compared;
};

/// Holds nodes first..last live in a verify-mode run until all their CZs
/// are done, then compares that marginal with the canonical construction on
/// the same nodes, replaying the run's q-measurements with their recorded
/// outcomes and tracing everything else.
EquivalenceResult equivalence_check(PipelineConfig config, Label first, Label last);

}  // namespace tcs
