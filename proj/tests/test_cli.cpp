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

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "tcs/cli.hpp"

using namespace tcs;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "tcs");
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::vector<std::string> keys(const nlohmann::ordered_json& j) {
  std::vector<std::string> out;
  for (auto it = j.begin(); it != j.end(); ++it) out.push_back(it.key());
  return out;
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "tcs_cli_test";
  fs::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_SUITE("cli_app") {
  TEST_CASE("lattice verify report") {
    const auto r = run({"lattice", "--nodes", "400", "--width", "4", "--squeezing-db", "10", "--verify"});
    REQUIRE(r.code == kExitOk);
    const auto j = nlohmann::ordered_json::parse(r.out);
    CHECK(keys(j) == std::vector<std::string>{"config", "high_water", "nullifiers", "checks"});
    CHECK(j["high_water"] == 6);
    CHECK(j["nullifiers"].size() == 396u);
    for (const auto& nv : j["nullifiers"]) CHECK(std::abs(nv["variance"].get<double>() - 0.05) < 1e-9);
    for (const auto& c : j["checks"]) {
      CHECK(keys(c) == std::vector<std::string>{"name", "pass", "value", "tolerance"});
      CHECK(c["pass"] == true);
    }
  }

  TEST_CASE("wire at zero squeezing") {
    const auto r = run({"wire", "--nodes", "3", "--squeezing-db", "0", "--verify"});
    REQUIRE(r.code == kExitOk);
    const auto j = nlohmann::ordered_json::parse(r.out);
    REQUIRE(j["nullifiers"].size() == 2u);
    for (const auto& nv : j["nullifiers"]) CHECK(std::abs(nv["variance"].get<double>() - 0.5) < 1e-12);
  }

  TEST_CASE("unfold") {
    const auto r = run({"unfold", "--width", "4", "--cols", "4"});
    REQUIRE(r.code == kExitOk);
    const auto j = nlohmann::ordered_json::parse(r.out);
    CHECK(j["unfolds"] == true);
    CHECK(j["grid"] == "3x4");
    CHECK(j["deleted"] == nlohmann::ordered_json({4, 8, 12, 16}));
    CHECK(j["offending_edge"].is_null());

    // Deleting the wrong residue class leaves shear edges: a failed check.
    const auto bad = run({"unfold", "--width", "4", "--cols", "4", "--offset", "1"});
    CHECK(bad.code == kExitCheckFailed);
    const auto jb = nlohmann::ordered_json::parse(bad.out);
    CHECK(jb["unfolds"] == false);
    CHECK(jb["offending_edge"].is_array());
    CHECK(keys(jb) == keys(j));
  }

  TEST_CASE("compare") {
    const auto w = run({"compare", "--topology", "wire", "--nodes", "20", "--range", "5..10"});
    REQUIRE(w.code == kExitOk);
    const auto jw = nlohmann::ordered_json::parse(w.out);
    CHECK(jw["max_cov_discrepancy"].get<double>() < 1e-9);
    const auto l = run({"compare", "--topology", "lattice", "--nodes", "40", "--width", "4", "--range",
                        "13..21", "--squeezing-db", "10"});
    CHECK(l.code == kExitOk);
    CHECK(keys(nlohmann::ordered_json::parse(l.out)) == keys(jw));
  }

  TEST_CASE("usage errors exit 2") {
    CHECK(run({}).code == kExitUsage);
    CHECK(run({"lattice", "--nodes", "10", "--width", "4", "--squeezing-db", "3", "--bogus"}).code == kExitUsage);
    const auto both = run({"wire", "--nodes", "5", "--squeezing-db", "3", "--squeezing-r", "1"});
    CHECK(both.code == kExitUsage);
    CHECK(both.err.find("error:") != std::string::npos);
    CHECK(run({"wire", "--nodes", "5"}).code == kExitUsage);
    CHECK(run({"lattice", "--nodes", "5", "--width", "4", "--squeezing-r", "1"}).code == kExitUsage);
    CHECK(run({"compare", "--topology", "ring", "--nodes", "5", "--range", "1..2"}).code == kExitUsage);
    CHECK(run({"compare", "--topology", "wire", "--nodes", "20", "--range", "1..19"}).code == kExitUsage);
    CHECK(run({"compare", "--topology", "wire", "--nodes", "20", "--range", "5-7"}).code == kExitUsage);
    const auto unknown = run({"frobnicate"});
    CHECK(unknown.code == kExitUsage);
    CHECK(unknown.err.find("Usage") != std::string::npos);
  }

  TEST_CASE("files are byte-identical for a fixed seed") {
    const auto a = scratch("a.json"), b = scratch("b.json"), csv = scratch("n.csv");
    const std::vector<std::string> base{"lattice", "--nodes", "120", "--width", "3", "--squeezing-db", "10",
                                        "--seed", "7", "--verify", "--emit-records"};
    auto args_a = base, args_b = base;
    args_a.insert(args_a.end(), {"--out", a.string(), "--csv", csv.string()});
    args_b.insert(args_b.end(), {"--out", b.string()});
    REQUIRE(run(args_a).code == kExitOk);
    REQUIRE(run(args_b).code == kExitOk);
    CHECK(slurp(a) == slurp(b));
    const auto j = nlohmann::ordered_json::parse(slurp(a));
    CHECK(keys(j) == std::vector<std::string>{"config", "high_water", "nullifiers", "records", "checks"});
    CHECK(j["records"].size() == 120u);

    const std::string text = slurp(csv);
    CHECK(text.rfind("node,variance\n", 0) == 0);
    CHECK(std::count(text.begin(), text.end(), '\n') == 1 + 117);
  }

  TEST_CASE("compute mode keeps the same keys") {
    const auto r = run({"wire", "--nodes", "50", "--squeezing-r", "0.7"});
    REQUIRE(r.code == kExitOk);
    const auto j = nlohmann::ordered_json::parse(r.out);
    CHECK(keys(j) == std::vector<std::string>{"config", "high_water", "nullifiers", "checks"});
    CHECK(j["nullifiers"].empty());
  }

  TEST_CASE("event log") {
    const auto ev = scratch("events.txt");
    REQUIRE(run({"wire", "--nodes", "2", "--squeezing-r", "0", "--events", ev.string()}).code == kExitOk);
    CHECK(slurp(ev) ==
          "0 emit 0\n1 emit 1\n1 cz 0 1\n1 trace 0\n2 emit 2\n2 cz 1 2\n2 measure 1\n3 measure 2\n");
  }
}
