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

#include "tcs/cli.hpp"

#include <CLI11.hpp>
#include <spdlog/logger.h>
#include <spdlog/sinks/ostream_sink.h>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <memory>
#include <optional>
#include <regex>
#include <set>
#include <sstream>

#include "tcs/graph.hpp"
#include "tcs/pipeline.hpp"
#include "tcs/report.hpp"

namespace tcs {
namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ReportOptions {
  std::string out;
  std::string csv;
  bool emit_records = false;
};

struct SqueezingOptions {
  std::optional<double> db;
  std::optional<double> r;
};

void add_report_options(CLI::App* cmd, ReportOptions& opts) {
  cmd->add_option("--out", opts.out, "Write the JSON report to FILE instead of stdout");
  cmd->add_option("--csv", opts.csv, "Write per-node nullifier variances to FILE (CSV)");
  cmd->add_flag("--emit-records", opts.emit_records, "Include measurement records in the report");
}

void add_squeezing_options(CLI::App* cmd, SqueezingOptions& opts) {
  auto* db = cmd->add_option("--squeezing-db", opts.db, "Squeezing in dB below vacuum");
  auto* r = cmd->add_option("--squeezing-r", opts.r, "Squeezing parameter r");
  db->excludes(r);
  r->excludes(db);
}

double resolve_squeezing(const SqueezingOptions& opts, std::optional<double> fallback) {
  if (opts.db) return squeezing_from_db(*opts.db);
  if (opts.r) return *opts.r;
  if (fallback) return *fallback;
  throw UsageError("one of --squeezing-db or --squeezing-r is required");
}

std::shared_ptr<spdlog::logger> make_logger(std::ostream& err) {
  auto sink = std::make_shared<spdlog::sinks::ostream_sink_mt>(err);
  auto log = std::make_shared<spdlog::logger>("tcs", sink);
  log->set_pattern("[%l] %v");
  const char* env = std::getenv("TCS_LOG");
  log->set_level(env ? spdlog::level::from_str(env) : spdlog::level::warn);
  return log;
}

void emit_json(const Json& j, const ReportOptions& opts, std::ostream& out) {
  const std::string text = j.dump(2) + "\n";
  if (opts.out.empty()) {
    out << text;
    return;
  }
  std::ofstream f(opts.out, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + opts.out);
  f << text;
}

void emit_csv(const std::vector<NodeVariance<double>>& rows, const ReportOptions& opts) {
  if (opts.csv.empty()) return;
  std::ofstream f(opts.csv, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + opts.csv);
  write_nullifier_csv(f, rows);
}

std::pair<Label, Label> parse_range(const std::string& text) {
  static const std::regex re(R"(^\s*(-?\d+)\.\.(-?\d+)\s*$)");
  std::smatch m;
  if (!std::regex_match(text, m, re)) throw UsageError("--range must look like A..B");
  return {std::stoll(m[1].str()), std::stoll(m[2].str())};
}

}  // namespace

int run_cli(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Streaming CV cluster-state simulator (one squeezer, one CZ gate)", "tcs"};
  app.require_subcommand(1);

  PipelineConfig run_cfg;
  SqueezingOptions run_sq;
  ReportOptions run_rep;
  bool verify = false;
  std::string events_file;

  auto* wire = app.add_subcommand("wire", "Temporal-mode quantum wire");
  auto* lattice = app.add_subcommand("lattice", "Double-pass square-lattice pipeline");
  for (auto* cmd : {wire, lattice}) {
    cmd->add_option("--nodes", run_cfg.nodes, "Number of emitted pulses")->required();
    cmd->add_option("--seed", run_cfg.seed, "Seed of the homodyne outcome generator");
    cmd->add_flag("--verify", verify, "Check every nullifier before its detection");
    cmd->add_option("--window", run_cfg.window, "Verify-window half-width");
    cmd->add_option("--events", events_file, "Write the event log to FILE");
    add_squeezing_options(cmd, run_sq);
    add_report_options(cmd, run_rep);
  }
  lattice->add_option("--width", run_cfg.width, "Lattice width M (outer loop span)")->required();

  PipelineConfig cmp_cfg;
  SqueezingOptions cmp_sq;
  ReportOptions cmp_rep;
  std::string topology = "wire";
  std::string range;
  auto* compare = app.add_subcommand("compare", "Pipeline vs canonical construction on a node range");
  compare->add_option("--topology", topology, "wire or lattice")
      ->required()
      ->check(CLI::IsMember({"wire", "lattice"}));
  compare->add_option("--nodes", cmp_cfg.nodes, "Number of emitted pulses")->required();
  compare->add_option("--width", cmp_cfg.width, "Lattice width M");
  compare->add_option("--range", range, "Node range A..B kept live for the comparison")->required();
  compare->add_option("--window", cmp_cfg.window, "Verify-window half-width");
  compare->add_option("--seed", cmp_cfg.seed, "Seed of the homodyne outcome generator");
  add_squeezing_options(compare, cmp_sq);
  add_report_options(compare, cmp_rep);

  std::int64_t unfold_width = 0, unfold_cols = 0, unfold_offset = 0;
  std::string edges_file;
  ReportOptions unfold_rep;
  auto* unfold = app.add_subcommand("unfold", "Unfold a sheared cylinder into a square lattice");
  unfold->add_option("--width", unfold_width, "Cylinder width M")->required();
  unfold->add_option("--cols", unfold_cols, "Number of stripes K")->required();
  unfold->add_option("--offset", unfold_offset, "Delete nodes j with j mod M == offset (0 is the Mth-node rule)");
  unfold->add_option("--edges", edges_file, "Write the unfolded graph as an edge list to FILE");
  add_report_options(unfold, unfold_rep);

  std::vector<std::string> args(argv.size() > 1 ? argv.begin() + 1 : argv.end(), argv.end());
  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kExitUsage;
  }

  auto log = make_logger(err);
  try {
    if (wire->parsed() || lattice->parsed()) {
      run_cfg.topology = wire->parsed() ? Topology::wire : Topology::lattice;
      run_cfg.squeezing = resolve_squeezing(run_sq, std::nullopt);
      run_cfg.mode = verify ? RunMode::verify : RunMode::compute;
      try {
        run_cfg.validate();
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
      log->info("running {} with {} nodes, r = {}", to_string(run_cfg.topology), run_cfg.nodes,
                run_cfg.squeezing);
      if (!events_file.empty()) {
        std::ofstream f(events_file, std::ios::binary);
        if (!f) throw std::runtime_error("cannot open " + events_file);
        write_event_log(f, build_schedule(run_cfg));
      }
      const RunReport report = run_pipeline(run_cfg);
      const auto checks = run_checks(run_cfg, report);
      emit_json(run_report_json(run_cfg, report, checks, run_rep.emit_records), run_rep, out);
      emit_csv(report.nullifier_checks, run_rep);
      for (const auto& c : checks)
        if (!c.pass) log->error("check {} failed: value {} tolerance {}", c.name, c.value, c.tolerance);
      return all_pass(checks) ? kExitOk : kExitCheckFailed;
    }

    if (compare->parsed()) {
      cmp_cfg.topology = topology == "wire" ? Topology::wire : Topology::lattice;
      cmp_cfg.squeezing = resolve_squeezing(cmp_sq, 1.0);
      cmp_cfg.mode = RunMode::verify;
      const auto [first, last] = parse_range(range);
      EquivalenceResult res;
      try {
        cmp_cfg.validate();
        res = equivalence_check(cmp_cfg, first, last);
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
      std::vector<Check> checks{
          {"max_cov_discrepancy", res.max_cov_discrepancy <= kEquivalenceTolerance,
           res.max_cov_discrepancy, kEquivalenceTolerance},
          {"max_mean_discrepancy", res.max_mean_discrepancy <= kEquivalenceTolerance,
           res.max_mean_discrepancy, kEquivalenceTolerance}};
      Json j;
      j["config"] = config_json(cmp_cfg);
      j["range"] = {first, last};
      j["snapshot_tick"] = res.snapshot_tick;
      j["max_cov_discrepancy"] = res.max_cov_discrepancy;
      j["max_mean_discrepancy"] = res.max_mean_discrepancy;
      j["checks"] = checks_json(checks);
      emit_json(j, cmp_rep, out);
      return all_pass(checks) ? kExitOk : kExitCheckFailed;
    }

    if (unfold->parsed()) {
      if (unfold_width < 2 || unfold_cols < 1) throw UsageError("need --width >= 2 and --cols >= 1");
      if (unfold_offset < 0 || unfold_offset >= unfold_width) throw UsageError("need 0 <= --offset < --width");
      const std::int64_t n = unfold_width * unfold_cols;
      std::set<Label> deleted;
      for (Label j = 1; j <= n; ++j)
        if (j % unfold_width == unfold_offset) deleted.insert(j);
      const Graph reduced = delete_nodes(sheared_cylinder_graph(n, unfold_width), deleted);
      const UnfoldResult res = unfolds_to_grid(reduced, unfold_width);
      if (!edges_file.empty()) {
        std::ofstream f(edges_file, std::ios::binary);
        if (!f) throw std::runtime_error("cannot open " + edges_file);
        write_edge_list(f, reduced);
      }
      Json j;
      j["config"] = {{"width", unfold_width}, {"cols", unfold_cols}, {"nodes", n}, {"offset", unfold_offset}};
      j["unfolds"] = res.unfolds;
      j["grid"] = std::to_string(res.rows) + "x" + std::to_string(res.cols);
      j["deleted"] = deleted;
      Json relabel = Json::array();
      for (const auto& [node, cell] : res.relabel)
        relabel.push_back({{"node", node}, {"row", cell.row}, {"col", cell.col}});
      j["relabel"] = std::move(relabel);
      j["offending_edge"] = res.offending_edge ? Json{res.offending_edge->first, res.offending_edge->second}
                                               : Json(nullptr);
      std::vector<Check> checks{{"unfolds_to_grid", res.unfolds, res.unfolds ? 1.0 : 0.0, 0.0}};
      j["checks"] = checks_json(checks);
      emit_json(j, unfold_rep, out);
      return all_pass(checks) ? kExitOk : kExitCheckFailed;
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kExitUsage;
  } catch (const std::exception& e) {
    log->error("{}", e.what());
    return kExitCheckFailed;
  }
  return kExitUsage;
}

}  // namespace tcs
