// Copyright 2026 The Backflow Authors
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

#include <cstdlib>

#include "backflow/errors.hpp"
#include "backflow/pipeline.hpp"
#include "backflow/threading.hpp"

using namespace backflow;

namespace {

Json eternal_config_json() {
    return Json{{"model", Json{{"id", "pauli_eternal"}, {"parameters", Json::object()}}},
                {"grid", Json{{"t_start", 0.1}, {"t_end", 0.6}, {"n_points", 11}}},
                {"pipeline", Json{{"scan", true},
                                  {"witness", true},
                                  {"separable", true},
                                  {"rhp", true},
                                  {"blp", true},
                                  {"rank", true},
                                  {"random_trajectories", 5}}},
                {"seed", 7}};
}

}  // namespace

TEST_SUITE_BEGIN("pipeline");

TEST_CASE("matrix JSON: re/im arrays round trip exactly") {
    ComplexMatrix m(2, 3);
    m(0, 0) = Complex{1.5, -2.25};
    m(1, 2) = Complex{0.0, 1e-17};
    const ComplexMatrix back = matrix_from_json(to_json(m));
    CHECK(back.rows() == 2);
    CHECK(back.cols() == 3);
    CHECK(back.max_abs_diff(m) == 0.0);
}

TEST_CASE("model registry: at least the four documented families") {
    const auto& registry = model_registry();
    CHECK(registry.size() >= 4);
    for (const auto& info : registry) {
        // Builders accept their declared defaults.
        Json params = Json::object();
        for (const auto& p : info.params) params[p.name] = p.default_value;
        const DynamicalFamily family = build_model(info.id, params);
        CHECK(family.dim() == 2);
    }
    CHECK_THROWS_AS((void)build_model("unknown_model", Json::object()), ConfigError);
}

TEST_CASE("config: parse, defaults, echo round trip") {
    const ScenarioConfig config = config_from_json(eternal_config_json());
    CHECK(config.model_id == "pauli_eternal");
    CHECK(config.grid.n_points() == 11);
    CHECK(config.flags.separable);
    CHECK(config.flags.random_trajectories == 5);
    CHECK(config.seed == 7);
    CHECK(config.witness_eta == doctest::Approx(0.9));  // default

    // Echo re-parses to the same configuration.
    const ScenarioConfig again = config_from_json(to_json(config));
    CHECK(to_json(again).dump() == to_json(config).dump());
}

TEST_CASE("config: malformed documents carry line diagnostics") {
    try {
        (void)parse_json_text("{\n  \"model\": {\n", "scenario.json");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        const std::string message = e.what();
        CHECK(message.find("scenario.json:3") != std::string::npos);
    }

    Json bad = eternal_config_json();
    bad["model"]["id"] = "no_such_model";
    CHECK_THROWS_AS((void)config_from_json(bad), ConfigError);

    Json bad_eta = eternal_config_json();
    bad_eta["witness"] = Json{{"eta", 1.5}};
    CHECK_THROWS_AS((void)config_from_json(bad_eta), ConfigError);
}

TEST_CASE("config: tolerance overrides flow into the scan report") {
    Json j = eternal_config_json();
    j["tolerances"] = Json{{"cp", 1e-7}, {"rank_rel", 1e-5}};
    const ScenarioConfig config = config_from_json(j);
    CHECK(config.tol.cp == doctest::Approx(1e-7));
    const RunReport report = run_pipeline(config);
    REQUIRE(report.divisibility.has_value());
    CHECK(report.divisibility->cp_tol == doctest::Approx(1e-7));
    CHECK(report.divisibility->rank_rel_tol == doctest::Approx(1e-5));
}

TEST_CASE("run_pipeline: eternal scenario witnesses backflow end to end") {
    const ScenarioConfig config = config_from_json(eternal_config_json());
    const RunReport report = run_pipeline(config);

    REQUIRE(report.divisibility.has_value());
    CHECK(report.divisibility->non_cp_intervals.size() == 1);
    REQUIRE(!report.witnesses.empty());
    const WitnessRecord& record = report.witnesses.front();
    CHECK(record.certificate.gain > 1e-6);
    REQUIRE(record.separable_certificate.has_value());
    CHECK(record.separable_certificate->gain > 1e-9);

    REQUIRE(report.trajectories.has_value());
    CHECK(report.trajectories->random_pairs == 5);
    CHECK(report.trajectories->all_monotone);
    REQUIRE(report.trajectories->blp.has_value());

    CHECK(report.backflow_detected);
    CHECK(report.verdict == "backflow_witnessed");
    CHECK(exit_code_for(report) == 3);
}

TEST_CASE("run_pipeline: semigroup scenario reports CP-divisible") {
    Json j = eternal_config_json();
    j["model"]["id"] = "pauli_depolarizing";
    j["model"]["parameters"] = Json{{"gamma", 0.25}};
    j["pipeline"]["separable"] = false;
    j["pipeline"]["blp"] = false;
    const RunReport report = run_pipeline(config_from_json(j));
    CHECK(report.divisibility->non_cp_intervals.empty());
    REQUIRE(!report.witnesses.empty());
    CHECK(std::abs(report.witnesses.front().certificate.gain) <= 1e-8);
    CHECK_FALSE(report.backflow_detected);
    CHECK(report.verdict == "cp_divisible_on_grid");
    CHECK(exit_code_for(report) == 0);
}

TEST_CASE("run_pipeline: report JSON has the documented structure") {
    const ScenarioConfig config = config_from_json(eternal_config_json());
    const Json report = to_json(run_pipeline(config));
    for (const char* key : {"tool_version", "config", "divisibility", "witnesses",
                            "kernel_witnesses", "trajectories", "warnings",
                            "backflow_detected", "verdict"}) {
        CAPTURE(key);
        REQUIRE(report.contains(key));
    }
    const Json& div = report.at("divisibility");
    for (const char* key :
         {"grid", "cp_tol", "cond_limit", "rank_rel_tol", "steps", "ranks",
          "non_cp_intervals", "divisibility_obstruction"}) {
        CAPTURE(key);
        REQUIRE(div.contains(key));
    }
    for (const auto& step : div.at("steps")) {
        for (const char* key : {"s", "t", "status", "min_choi_eig", "cp", "positivity",
                                "rank_at_s", "g", "condition_number"}) {
            CAPTURE(key);
            REQUIRE(step.contains(key));
        }
    }
    for (const auto& witness : report.at("witnesses")) {
        REQUIRE(witness.contains("pair"));
        REQUIRE(witness.contains("certificate"));
        for (const char* key : {"s", "t", "norm_at_s", "norm_at_t", "gain", "choi_excess"}) {
            CAPTURE(key);
            REQUIRE(witness.at("certificate").contains(key));
        }
    }

    // Scan-driven certificates land on grid points.
    const TimeGrid& grid = config.grid;
    for (const auto& witness : report.at("witnesses")) {
        const double s = witness.at("certificate").at("s").get<double>();
        const double t = witness.at("certificate").at("t").get<double>();
        bool s_on_grid = false, t_on_grid = false;
        for (std::size_t i = 0; i < grid.n_points(); ++i) {
            if (std::abs(grid.at(i) - s) < 1e-12) s_on_grid = true;
            if (std::abs(grid.at(i) - t) < 1e-12) t_on_grid = true;
        }
        CHECK(s_on_grid);
        CHECK(t_on_grid);
    }
}

TEST_CASE("run_pipeline: identical configs give byte-identical reports") {
    const ScenarioConfig config = config_from_json(eternal_config_json());
    const std::string a = to_json(run_pipeline(config)).dump(2);
    const std::string b = to_json(run_pipeline(config)).dump(2);
    CHECK(a == b);
}

TEST_CASE("BACKFLOW_THREADS caps the worker pool and leaves results unchanged") {
    setenv("BACKFLOW_THREADS", "1", 1);
    CHECK(worker_count() == 1);
    const ScenarioConfig config = config_from_json(eternal_config_json());
    const std::string serial = to_json(run_pipeline(config)).dump();
    unsetenv("BACKFLOW_THREADS");
    CHECK(worker_count() >= 1);
    const std::string parallel = to_json(run_pipeline(config)).dump();
    CHECK(serial == parallel);
}

TEST_CASE("run_pipeline: explicit witness times override the scan choice") {
    Json j = eternal_config_json();
    j["witness"] = Json{{"eta", 0.5}, {"s", 0.2}, {"t", 0.4}};
    j["pipeline"]["separable"] = false;
    j["pipeline"]["blp"] = false;
    j["pipeline"]["random_trajectories"] = 0;
    const RunReport report = run_pipeline(config_from_json(j));
    REQUIRE(report.witnesses.size() == 1);
    CHECK(report.witnesses.front().certificate.s == doctest::Approx(0.2));
    CHECK(report.witnesses.front().certificate.t == doctest::Approx(0.4));
    CHECK(report.witnesses.front().certificate.gain > 0.0);
}

TEST_SUITE_END();
