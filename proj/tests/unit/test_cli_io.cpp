// Copyright 2026 The bnscore Authors
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

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "bnscore/cli.hpp"
#include "bnscore/csv.hpp"
#include "bnscore/error.hpp"
#include "bnscore/json_io.hpp"
#include "generators.hpp"

using namespace bnscore;
using namespace bnscore::testing;
using Json = nlohmann::json;

namespace {

// Scratch files under the system temp directory.
class TempFile {
 public:
  TempFile(const std::string& name, const std::string& content)
      : path_((std::filesystem::temp_directory_path() / ("bnscore_test_" + name)).string()) {
    std::ofstream out(path_, std::ios::binary);
    out << content;
  }
  ~TempFile() { std::filesystem::remove(path_); }
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

}  // namespace

TEST_SUITE("cli_io") {

TEST_CASE("discrete csv maps categories lexicographically") {
  const auto data = parse_discrete_csv("X,Y\na,b\nb,a\n");
  CHECK(data.case_count() == 2);
  CHECK(data.scheme().cardinality(0) == 2);
  CHECK(data.scheme().cardinality(1) == 2);
  CHECK(data.row(0)[0] == 0);
  CHECK(data.row(0)[1] == 1);
  CHECK(data.row(1)[0] == 1);
  CHECK(data.row(1)[1] == 0);
}

TEST_CASE("discrete csv edge cases") {
  const auto empty = parse_discrete_csv("X,Y\n");
  CHECK(empty.case_count() == 0);
  CHECK(empty.scheme().cardinality(0) == 2);

  CHECK_THROWS_WITH_AS(parse_discrete_csv("X,Y\na\n"), doctest::Contains("row 1"), Error);
  CHECK_THROWS_AS(parse_discrete_csv("X,Y\na,\n"), Error);
  CHECK_THROWS_AS(parse_discrete_csv(""), Error);
  CHECK_THROWS_AS(parse_discrete_csv("X,X\na,b\n"), Error);

  // declared cardinalities: more categories than declared is a schema
  // error, fewer is fine
  CHECK_THROWS_AS(parse_discrete_csv("X\na\nb\nc\n", std::vector<int>{2}), Error);
  const auto declared = parse_discrete_csv("X\na\nb\n", std::vector<int>{3});
  CHECK(declared.scheme().cardinality(0) == 3);
}

TEST_CASE("continuous csv parsing") {
  const auto data = parse_continuous_csv("X\n1.5\n-2.0\n");
  CHECK(data.case_count() == 2);
  CHECK(data.row(0)[0] == doctest::Approx(1.5));

  CHECK(parse_continuous_csv("X\n1e-3\n").row(0)[0] == doctest::Approx(1e-3));
  CHECK_THROWS_AS(parse_continuous_csv("X\nNaN\n"), Error);
  CHECK_THROWS_AS(parse_continuous_csv("X\ninf\n"), Error);
  CHECK_THROWS_AS(parse_continuous_csv("X\nhello\n"), Error);
  CHECK_THROWS_AS(parse_continuous_csv("X\n1.5x\n"), Error);
}

TEST_CASE("column reordering and scheme alignment") {
  const auto data = parse_discrete_csv("Y,X\nb,a\na,b\n");
  const auto reordered = reorder_columns(data, {"X", "Y"});
  CHECK(reordered.names() == std::vector<std::string>{"X", "Y"});
  CHECK(reordered.row(0)[0] == data.row(0)[1]);
  CHECK_THROWS_AS(reorder_columns(data, {"X", "Z"}), Error);

  CHECK_THROWS_AS(with_scheme(parse_discrete_csv("X\na\nb\nc\n"), DiscreteScheme({2})), Error);

  const auto continuous = parse_continuous_csv("V,U\n2.5,1.0\n-0.5,3.0\n");
  const auto swapped = reorder_columns(continuous, {"U", "V"});
  CHECK(swapped.row(0)[0] == doctest::Approx(1.0));
  CHECK(swapped.row(1)[1] == doctest::Approx(-0.5));
}

TEST_CASE("dag json round trip") {
  const Dag dag({"A", "B", "C"}, {{0, 1}, {2, 1}});
  const Dag back = dag_from_json(dag_to_json(dag));
  CHECK(back == dag);
  CHECK_THROWS_AS(dag_from_json("{\"names\":[\"A\"],\"arcs\":[[\"A\",\"Z\"]]}"), Error);
  CHECK_THROWS_AS(dag_from_json("not json"), Error);
}

TEST_CASE("scoring prior json round trips") {
  Rng rng(71);
  const DiscreteScheme scheme({2, 3});
  const NamedDiscretePrior discrete{variable_names(2), random_dirichlet_prior(scheme, rng)};
  const auto discrete_back = prior_from_json(prior_to_json(discrete));
  const auto& d = std::get<NamedDiscretePrior>(discrete_back);
  CHECK(d.names == discrete.names);
  CHECK(d.prior.alpha() == discrete.prior.alpha());
  for (std::size_t s = 0; s < scheme.state_count(); ++s) {
    CHECK(d.prior.joint().table()[s] == discrete.prior.joint().table()[s]);
  }

  const NamedGaussianPrior gaussian{variable_names(2), random_nw_prior(2, rng)};
  const auto gaussian_back = prior_from_json(prior_to_json(gaussian));
  const auto& g = std::get<NamedGaussianPrior>(gaussian_back);
  CHECK(g.prior.a_mu() == gaussian.prior.a_mu());
  CHECK(g.prior.a_w() == gaussian.prior.a_w());
  for (std::size_t i = 0; i < 2; ++i) {
    CHECK(g.prior.mu0()[i] == gaussian.prior.mu0()[i]);
    for (std::size_t j = 0; j < 2; ++j) {
      CHECK(g.prior.t0()(i, j) == gaussian.prior.t0()(i, j));
    }
  }
}

TEST_CASE("prior network json") {
  const std::string discrete = R"({
    "names": ["X", "Y"],
    "arcs": [["X", "Y"]],
    "cardinalities": [2, 2],
    "cpts": [[[0.8, 0.2]], [[0.9, 0.1], [0.1, 0.9]]]
  })";
  const auto net = network_from_json(discrete);
  const auto& d = std::get<DiscretePriorNetwork>(net);
  CHECK(d.dag().has_arc(0, 1));
  CHECK(d.cpts()[1][0] == doctest::Approx(0.9));

  const std::string gaussian = R"({
    "names": ["X", "Y"],
    "arcs": [["X", "Y"]],
    "intercepts": [0.0, 1.0],
    "coefficients": [{}, {"X": 0.5}],
    "variances": [1.0, 2.0]
  })";
  const auto gnet = network_from_json(gaussian);
  const auto& g = std::get<GaussianPriorNetwork>(gnet);
  CHECK(g.coefficients()[1][0] == doctest::Approx(0.5));

  CHECK_THROWS_AS(network_from_json(R"({"names":["X"],"arcs":[]})"), Error);
}

TEST_CASE("score command reports both routes; empty data scores zero") {
  const NamedDiscretePrior prior{
      {"X", "Y"},
      DirichletJointPrior(4.0, JointDiscreteParams(DiscreteScheme({2, 2}),
                                                   {0.25, 0.25, 0.25, 0.25}))};
  TempFile prior_file("prior.json", prior_to_json(prior));
  TempFile dag_file("dag.json", dag_to_json(Dag({"X", "Y"}, {{0, 1}})));
  TempFile data_file("data.csv", "X,Y\n");

  RunConfig config;
  config.command = "score";
  config.data_path = data_file.path();
  config.dag_path = dag_file.path();
  config.prior_path = prior_file.path();
  const auto result = run_command(config);
  REQUIRE(result.exit_code == 0);
  const Json report = Json::parse(result.report);
  CHECK(report["log_score"] == 0.0);
  CHECK(report["log_score_family"] == 0.0);
  CHECK(report["log_score_ratio"] == 0.0);
  CHECK(report["m"] == 0);

  // unseen category in the data vs the prior's declared scheme
  TempFile bad_data("bad.csv", "X,Y\na,b\nb,c\nc,a\n");
  config.data_path = bad_data.path();
  const auto bad = run_command(config);
  CHECK(bad.exit_code == 1);
  CHECK(Json::parse(bad.report)["error"]["kind"] == "schema");
}

TEST_CASE("score command crosses routes on real data") {
  Rng rng(73);
  const auto names = std::vector<std::string>{"X", "Y"};
  const NamedDiscretePrior prior{names, random_dirichlet_prior(DiscreteScheme({2, 2}), rng)};
  TempFile prior_file("prior2.json", prior_to_json(prior));
  TempFile dag_file("dag2.json", dag_to_json(Dag(names, {{0, 1}})));
  TempFile data_file("data2.csv", "X,Y\na,b\nb,a\na,a\nb,b\na,b\n");

  RunConfig config;
  config.command = "score";
  config.data_path = data_file.path();
  config.dag_path = dag_file.path();
  config.prior_path = prior_file.path();
  const auto result = run_command(config);
  REQUIRE(result.exit_code == 0);
  const Json report = Json::parse(result.report);
  CHECK(std::abs(report["cross_check_difference"].get<double>()) < 1e-9);
  CHECK(report["log_score"].get<double>() < 0.0);

  // model mismatch is a usage error
  config.model = "gaussian";
  CHECK(run_command(config).exit_code == 1);
}

TEST_CASE("equiv command emits the reversal sequence") {
  TempFile d1("equiv1.json", dag_to_json(Dag({"A", "B", "C"}, {{0, 1}, {1, 2}})));
  TempFile d2("equiv2.json", dag_to_json(Dag({"A", "B", "C"}, {{2, 1}, {1, 0}})));
  TempFile d3("equiv3.json", dag_to_json(Dag({"A", "B", "C"}, {{0, 1}, {2, 1}})));

  RunConfig config;
  config.command = "equiv";
  config.dag_path = d1.path();
  config.dag2_path = d2.path();
  const auto result = run_command(config);
  REQUIRE(result.exit_code == 0);
  const Json report = Json::parse(result.report);
  CHECK(report["equivalent"] == true);
  CHECK(report["reversals"].is_array());
  CHECK(!report["reversals"].empty());

  config.dag2_path = d3.path();
  const Json not_equiv = Json::parse(run_command(config).report);
  CHECK(not_equiv["equivalent"] == false);
  CHECK(not_equiv["reversals"].is_null());
}

TEST_CASE("prior-build then score round trip; check-consistency is tight") {
  const std::string network = R"({
    "names": ["X", "Y"],
    "arcs": [["X", "Y"]],
    "cardinalities": [2, 2],
    "cpts": [[[0.8, 0.2]], [[0.9, 0.1], [0.1, 0.9]]]
  })";
  TempFile network_file("net.json", network);

  RunConfig build;
  build.command = "prior-build";
  build.network_path = network_file.path();
  build.ess = 4.0;
  const auto built = run_command(build);
  REQUIRE(built.exit_code == 0);
  const Json prior_json = Json::parse(built.report);
  CHECK(prior_json["model"] == "discrete");
  CHECK(prior_json["alpha"] == 4.0);

  TempFile prior_file("built_prior.json", built.report);
  RunConfig check;
  check.command = "check-consistency";
  check.prior_path = prior_file.path();
  check.points = 100;
  check.seed = 7;
  const auto checked = run_command(check);
  REQUIRE(checked.exit_code == 0);
  CHECK(Json::parse(checked.report)["max_abs_deviation"].get<double>() < 1e-8);

  // missing ESS
  RunConfig missing;
  missing.command = "prior-build";
  missing.network_path = network_file.path();
  CHECK(run_command(missing).exit_code == 1);
}

TEST_CASE("learn is deterministic and traces parse as json lines") {
  Rng rng(75);
  const auto names = std::vector<std::string>{"X", "Y", "Z"};
  const NamedDiscretePrior prior{names,
                                 random_dirichlet_prior(DiscreteScheme({2, 2, 2}), rng)};
  TempFile prior_file("learn_prior.json", prior_to_json(prior));
  std::string csv = "X,Y,Z\n";
  for (int l = 0; l < 60; ++l) {
    const int x = rng.uniform_int(0, 1);
    const int y = (x + rng.uniform_int(0, 4) / 4) % 2;  // correlated
    const int z = (y + rng.uniform_int(0, 4) / 4) % 2;
    csv += std::string(x ? "b" : "a") + "," + (y ? "b" : "a") + "," + (z ? "b" : "a") + "\n";
  }
  TempFile data_file("learn.csv", csv);

  RunConfig config;
  config.command = "learn";
  config.data_path = data_file.path();
  config.prior_path = prior_file.path();
  config.seed = 12345;
  config.restarts = 3;
  config.max_parents = 2;

  const auto first = run_command(config);
  const auto second = run_command(config);
  REQUIRE(first.exit_code == 0);
  CHECK(first.report == second.report);        // byte identical
  CHECK(first.trace_jsonl == second.trace_jsonl);

  const Json report = Json::parse(first.report);
  CHECK(report["dag"]["names"].size() == 3);
  CHECK(report["trace"].is_array());

  // every trace line parses and scores increase
  std::istringstream lines(first.trace_jsonl);
  std::string line;
  double previous = -1e300;
  while (std::getline(lines, line)) {
    const Json entry = Json::parse(line);
    CHECK(entry.contains("step"));
    CHECK(entry["score"].get<double>() > previous);
    previous = entry["score"].get<double>();
  }

  // seed is mandatory
  RunConfig no_seed = config;
  no_seed.seed.reset();
  CHECK(run_command(no_seed).exit_code == 1);
}

TEST_CASE("gaussian learn runs through the command layer") {
  Rng rng(79);
  const auto names = std::vector<std::string>{"U", "V"};
  const NamedGaussianPrior prior{names, random_nw_prior(2, rng)};
  TempFile prior_file("glearn_prior.json", prior_to_json(prior));
  std::string csv = "U,V\n";
  for (int l = 0; l < 40; ++l) {
    const double u = rng.normal();
    const double v = 0.9 * u + 0.3 * rng.normal();
    csv += std::to_string(u) + "," + std::to_string(v) + "\n";
  }
  TempFile data_file("glearn.csv", csv);

  RunConfig config;
  config.command = "learn";
  config.data_path = data_file.path();
  config.prior_path = prior_file.path();
  config.seed = 4242;
  config.restarts = 2;
  config.arc_penalty = -0.5;
  const auto result = run_command(config);
  REQUIRE(result.exit_code == 0);
  const Json report = Json::parse(result.report);
  CHECK(report["model"] == "gaussian");
  // strong dependence: the learned structure links the two variables
  CHECK(report["dag"]["arcs"].size() == 1);
}

TEST_CASE("equiv rejects mismatched variable sets") {
  TempFile d1("mm1.json", dag_to_json(Dag({"A", "B"}, {{0, 1}})));
  TempFile d2("mm2.json", dag_to_json(Dag({"A", "C"}, {{0, 1}})));
  RunConfig config;
  config.command = "equiv";
  config.dag_path = d1.path();
  config.dag2_path = d2.path();
  const auto result = run_command(config);
  CHECK(result.exit_code == 1);
  CHECK(Json::parse(result.report)["error"]["kind"] == "usage");
}

TEST_CASE("missing files produce machine-readable errors") {
  RunConfig config;
  config.command = "score";
  config.data_path = "/nonexistent/data.csv";
  config.dag_path = "/nonexistent/dag.json";
  config.prior_path = "/nonexistent/prior.json";
  const auto result = run_command(config);
  CHECK(result.exit_code == 1);
  const Json report = Json::parse(result.report);
  CHECK(report.contains("error"));
  CHECK(report["error"]["kind"] == "io");
}

}  // TEST_SUITE
