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

#include "tcs/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "tcs/physicality.hpp"
#include "tcs/symplectic.hpp"

namespace tcs {

std::string to_string(Topology t) { return t == Topology::wire ? "wire" : "lattice"; }
std::string to_string(RunMode m) { return m == RunMode::compute ? "compute" : "verify"; }

std::string to_string(EventKind k) {
  switch (k) {
    case EventKind::emit: return "emit";
    case EventKind::cz: return "cz";
    case EventKind::divert: return "divert";
    case EventKind::measure: return "measure";
    case EventKind::trace: return "trace";
  }
  return "unknown";
}

void PipelineConfig::validate() const {
  if (nodes < 1) throw std::invalid_argument("pipeline: need at least one node");
  if (!std::isfinite(squeezing) || squeezing < 0.0) {
    throw std::invalid_argument("pipeline: squeezing must be finite and >= 0");
  }
  if (topology == Topology::lattice) {
    if (width < 2) throw std::invalid_argument("pipeline: lattice width must be >= 2");
    if (nodes < 2 * width) throw std::invalid_argument("pipeline: lattice needs nodes >= 2 * width");
  }
  if (window) {
    if (*window < loop_span()) {
      throw std::invalid_argument("pipeline: verify window must be >= the loop span");
    }
  }
  for (const auto& [node, angle] : program) {
    if (node < 1 || node > nodes) {
      throw std::invalid_argument("pipeline: program names node " + std::to_string(node) +
                                  " outside 1..N");
    }
    if (!std::isfinite(angle)) throw std::invalid_argument("pipeline: non-finite program angle");
  }
}

std::int64_t PipelineConfig::loop_span() const {
  return topology == Topology::wire ? 1 : width;
}

std::int64_t PipelineConfig::verify_window() const {
  if (window) return *window;
  return topology == Topology::wire ? 3 : width;
}

std::int64_t PipelineConfig::last_tick() const { return exit_tick(nodes); }

std::int64_t PipelineConfig::exit_tick(Label node) const {
  return topology == Topology::wire ? node + 1 : node + width + 1;
}

std::int64_t PipelineConfig::high_water_bound() const { return loop_span() + 2; }

std::vector<Label> ancilla_labels(const PipelineConfig& config) {
  if (config.topology == Topology::wire) return {0};
  std::vector<Label> out;
  for (Label a = -config.width; a <= 0; ++a) out.push_back(a);
  return out;
}

std::set<Label> leading_boundary(const PipelineConfig& config) {
  std::set<Label> out;
  for (Label j = 1; j <= std::min<std::int64_t>(config.loop_span(), config.nodes); ++j) out.insert(j);
  return out;
}

std::set<Label> trailing_boundary(const PipelineConfig& config) {
  std::set<Label> out;
  for (Label j = std::max<Label>(1, config.nodes - config.loop_span() + 1); j <= config.nodes; ++j)
    out.insert(j);
  return out;
}

Graph pipeline_graph(const PipelineConfig& config) {
  config.validate();
  return config.topology == Topology::wire ? wire_graph(config.nodes)
                                           : sheared_cylinder_graph(config.nodes, config.width);
}

Graph extended_pipeline_graph(const PipelineConfig& config) {
  config.validate();
  Graph g;
  for (Label a : ancilla_labels(config)) g.add_node(a);
  for (Label j = 1; j <= config.nodes; ++j) g.add_node(j);
  // Inner loop: every pulse meets its successor, the first one meets ancilla 0.
  for (Label i = 0; i < config.nodes; ++i) g.add_edge(i, i + 1);
  if (config.topology == Topology::lattice) {
    for (Label a = -config.width; a + config.width <= config.nodes; ++a) g.add_edge(a, a + config.width);
  }
  return g;
}

std::set<Label> extended_neighbors(const PipelineConfig& config, Label node) {
  const Label n = config.nodes;
  std::set<Label> out;
  if (node >= 1) out.insert(node - 1);
  if (node >= 0 && node + 1 <= n) out.insert(node + 1);
  if (config.topology == Topology::lattice) {
    const Label m = config.width;
    if (node >= 0) out.insert(node - m);
    if (node >= -m && node + m <= n) out.insert(node + m);
  }
  return out;
}

std::vector<PipelineEvent> tick_events(const PipelineConfig& config, std::int64_t tick) {
  std::vector<PipelineEvent> ev;
  if (tick < 0 || tick > config.last_tick()) return ev;
  if (tick == 0) {
    for (Label a : ancilla_labels(config)) ev.push_back({0, EventKind::emit, a, 0});
    return ev;
  }
  const Label n = config.nodes;
  if (tick <= n) {
    ev.push_back({tick, EventKind::emit, tick, 0});
    ev.push_back({tick, EventKind::cz, tick - 1, tick});
  }
  Label leaving = tick - 1;
  if (config.topology == Topology::lattice) {
    const Label diverted = tick - 1;
    if (diverted <= n) {
      ev.push_back({tick, EventKind::divert, diverted, 0});
      ev.push_back({tick, EventKind::cz, diverted - config.width, diverted});
    }
    leaving = tick - 1 - config.width;
  }
  ev.push_back({tick, leaving <= 0 ? EventKind::trace : EventKind::measure, leaving, 0});
  return ev;
}

std::vector<PipelineEvent> build_schedule(const PipelineConfig& config) {
  config.validate();
  std::vector<PipelineEvent> out;
  for (std::int64_t t = 0; t <= config.last_tick(); ++t) {
    auto ev = tick_events(config, t);
    out.insert(out.end(), ev.begin(), ev.end());
  }
  return out;
}

void write_event_log(std::ostream& os, const std::vector<PipelineEvent>& events) {
  for (const auto& e : events) {
    os << e.tick << ' ' << to_string(e.kind) << ' ' << e.a;
    if (e.kind == EventKind::cz) os << ' ' << e.b;
    os << '\n';
  }
}

namespace {

PipelineConfig validated(PipelineConfig config) {
  config.validate();
  return config;
}

}  // namespace

Pipeline::Pipeline(PipelineConfig config)
    : config_(validated(std::move(config))),
      rng_(config_.seed),
      leading_(leading_boundary(config_)),
      trailing_(trailing_boundary(config_)) {}

void Pipeline::refill() {
  while (pending_.empty() && next_tick_ <= config_.last_tick()) {
    current_tick_ = next_tick_;
    auto ev = tick_events(config_, next_tick_++);
    pending_.assign(ev.begin(), ev.end());
  }
}

std::optional<PipelineEvent> Pipeline::peek() {
  refill();
  if (pending_.empty()) return std::nullopt;
  return pending_.front();
}

void Pipeline::step_event() {
  refill();
  if (pending_.empty()) throw std::logic_error("Pipeline: schedule exhausted");
  const PipelineEvent ev = pending_.front();
  pending_.pop_front();
  execute(ev);
  report_.high_water = std::max(report_.high_water, state_.num_modes());
  if (pending_.empty() && config_.mode == RunMode::verify && !state_.empty()) {
    report_.min_symplectic_eigenvalue =
        std::min(report_.min_symplectic_eigenvalue, min_symplectic_eigenvalue(state_));
  }
}

void Pipeline::step_tick() {
  refill();
  do {
    step_event();
  } while (!pending_.empty());
}

void Pipeline::run() {
  while (!done()) step_tick();
  release_held();
}

void Pipeline::hold(Label node) {
  if (node < 1 || node > config_.nodes) throw std::invalid_argument("Pipeline: cannot hold node");
  hold_.insert(node);
}

void Pipeline::release_held() {
  std::sort(held_.begin(), held_.end());
  const auto held = std::move(held_);
  held_.clear();
  for (Label j : held) {
    hold_.erase(j);
    measure_node(j);
  }
}

std::optional<Loop> Pipeline::loop_of(Label node) const {
  auto it = route_.find(node);
  if (it == route_.end()) return std::nullopt;
  return it->second;
}

void Pipeline::execute(const PipelineEvent& ev) {
  switch (ev.kind) {
    case EventKind::emit: {
      if (ev.a <= 0) {
        state_ = append_modes(state_, vacuum_state<double>(std::vector<Label>{ev.a}));
        route_[ev.a] = ev.a == 0 ? Loop::inner : Loop::outer;
      } else {
        state_ = append_modes(state_, p_squeezed_state(config_.squeezing, ev.a));
        route_[ev.a] = Loop::inner;
      }
      break;
    }
    case EventKind::cz:
      if (!state_.contains(ev.a) || !state_.contains(ev.b)) {
        throw std::logic_error("Pipeline: cz on a pulse that is not live");
      }
      state_ = apply_cz(std::move(state_), ev.a, ev.b);
      break;
    case EventKind::divert:
      if (!state_.contains(ev.a)) throw std::logic_error("Pipeline: divert of a pulse that is not live");
      route_[ev.a] = Loop::outer;
      break;
    case EventKind::trace:
      state_ = trace_out(state_, {ev.a});
      route_.erase(ev.a);
      report_.traced.push_back(ev.a);
      break;
    case EventKind::measure:
      if (hold_.count(ev.a)) {
        held_.push_back(ev.a);
      } else {
        measure_node(ev.a);
      }
      break;
  }
}

void Pipeline::measure_node(Label node) {
  const bool leading = leading_.count(node) != 0;
  const bool boundary = leading || trailing_.count(node) != 0;

  double angle = 0.0;
  if (!boundary && config_.mode == RunMode::compute) {
    if (auto it = config_.program.find(node); it != config_.program.end()) angle = it->second;
  }

  if (config_.mode == RunMode::verify && !leading) {
    // Earlier neighbours are already gone through q-measurements, which leave
    // the variance of the remaining nullifier terms unchanged.
    std::set<Label> live;
    for (Label k : extended_neighbors(config_, node))
      if (state_.contains(k)) live.insert(k);
    report_.nullifier_checks.push_back({node, nullifier_variance(state_, node, live)});
  }

  auto measured = measure_quadrature(state_, node, angle, rng_);
  state_ = std::move(measured.state);
  route_.erase(node);
  report_.records.push_back(std::move(measured.record));
  if (leading) report_.boundary_deleted.push_back(node);
}

RunReport run_pipeline(const PipelineConfig& config) {
  Pipeline p(config);
  p.run();
  return p.report();
}

}  // namespace tcs
