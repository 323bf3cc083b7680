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

#include "backflow/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>

#include "backflow/errors.hpp"
#include "backflow/random.hpp"
#include "backflow/version.hpp"

namespace backflow {

namespace {

double param_or(const Json& params, const std::string& name, double fallback) {
    if (params.contains(name)) return params.at(name).get<double>();
    return fallback;
}

}  // namespace

const std::vector<ModelInfo>& model_registry() {
    static const std::vector<ModelInfo> registry = {
        {"pauli_eternal",
         "Qubit Pauli channel with rates (1, 1, -tanh t); P-divisible at all times, "
         "CP-divisible at none",
         {}},
        {"pauli_dephasing",
         "Qubit dephasing semigroup, coherence decay exp(-2 gamma t)",
         {{"gamma", "dephasing rate", 1.0}}},
        {"pauli_depolarizing",
         "Qubit depolarizing semigroup with equal Pauli rates",
         {{"gamma", "depolarizing rate", 0.25}}},
        {"amplitude_damping_semigroup",
         "Constant-rate amplitude damping, excited amplitude exp(-gamma t / 2)",
         {{"gamma", "decay rate", 1.0}}},
        {"amplitude_damping_lorentzian",
         "Resonant amplitude damping with Lorentzian reservoir; strong coupling "
         "(2 gamma0 > lambda) oscillates through isolated zeros",
         {{"lambda", "spectral width", 1.0}, {"gamma0", "coupling strength", 5.0}}},
    };
    return registry;
}

DynamicalFamily build_model(const std::string& id, const Json& params) {
    if (id == "pauli_eternal") return model_pauli_eternal();
    if (id == "pauli_dephasing") return model_pauli_dephasing(param_or(params, "gamma", 1.0));
    if (id == "pauli_depolarizing")
        return model_pauli_depolarizing(param_or(params, "gamma", 0.25));
    if (id == "amplitude_damping_semigroup")
        return model_amplitude_damping_semigroup(param_or(params, "gamma", 1.0));
    if (id == "amplitude_damping_lorentzian")
        return model_amplitude_damping_lorentzian(param_or(params, "lambda", 1.0),
                                                  param_or(params, "gamma0", 5.0));
    throw ConfigError("unknown model id '" + id + "'; run the models subcommand for the zoo");
}

ScenarioConfig config_from_json(const Json& j) {
    if (!j.is_object()) throw ConfigError("config: top level must be a JSON object");
    ScenarioConfig config;

    const Json& model = j.at("model");
    config.model_id = model.at("id").get<std::string>();
    config.model_params = model.value("parameters", Json::object());

    config.grid = grid_from_json(j.at("grid"));
    if (j.contains("tolerances")) config.tol = tolerances_from_json(j.at("tolerances"));

    if (j.contains("pipeline")) {
        const Json& p = j.at("pipeline");
        config.flags.scan = p.value("scan", config.flags.scan);
        config.flags.witness = p.value("witness", config.flags.witness);
        config.flags.separable = p.value("separable", config.flags.separable);
        config.flags.rhp = p.value("rhp", config.flags.rhp);
        config.flags.blp = p.value("blp", config.flags.blp);
        config.flags.rank = p.value("rank", config.flags.rank);
        config.flags.random_trajectories =
            p.value("random_trajectories", config.flags.random_trajectories);
    }
    if (j.contains("witness")) {
        const Json& w = j.at("witness");
        config.witness_eta = w.value("eta", config.witness_eta);
        if (w.contains("s")) config.witness_s = w.at("s").get<double>();
        if (w.contains("t")) config.witness_t = w.at("t").get<double>();
    }
    config.seed = j.value("seed", std::uint64_t{0});
    config.output_dir = j.value("output_dir", std::string{"out"});

    if (config.witness_eta <= 0.0 || config.witness_eta >= 1.0) {
        throw ConfigError("config: witness.eta must lie in (0, 1)");
    }
    // Validate the model id and parameters eagerly so `validate` catches typos.
    bool known = false;
    for (const auto& info : model_registry()) known = known || info.id == config.model_id;
    if (!known) throw ConfigError("config: unknown model id '" + config.model_id + "'");
    return config;
}

Json to_json(const ScenarioConfig& config) {
    Json witness{{"eta", config.witness_eta}};
    if (config.witness_s) witness["s"] = *config.witness_s;
    if (config.witness_t) witness["t"] = *config.witness_t;
    return Json{{"model", Json{{"id", config.model_id}, {"parameters", config.model_params}}},
                {"grid", to_json(config.grid)},
                {"tolerances", to_json(config.tol)},
                {"pipeline", Json{{"scan", config.flags.scan},
                                  {"witness", config.flags.witness},
                                  {"separable", config.flags.separable},
                                  {"rhp", config.flags.rhp},
                                  {"blp", config.flags.blp},
                                  {"rank", config.flags.rank},
                                  {"random_trajectories", config.flags.random_trajectories}}},
                {"witness", std::move(witness)},
                {"seed", config.seed},
                {"output_dir", config.output_dir}};
}

namespace {

WitnessRecord make_witness_record(const DynamicalFamily& family, const ScenarioConfig& config,
                                  double s, double t) {
    WitnessRecord record;
    record.pair = construct_witness(family, s, config.witness_eta, config.tol);
    record.certificate = verify_witness(family, record.pair, t, config.tol);
    if (config.flags.separable) {
        record.separable_pair = separable_witness(record.pair, config.tol);
        record.separable_certificate =
            verify_witness(family, *record.separable_pair, t, config.tol);
    }
    return record;
}

// Pick the grid time after s where some kernel direction of map_s regains the
// largest trace norm.
double best_kernel_probe_time(const DynamicalFamily& family, const TimeGrid& grid, double s,
                              const Tolerances& tol) {
    const auto kernel = kernel_basis(family, s, tol.kernel_image_norm);
    double best_t = grid.t_end();
    double best_norm = -1.0;
    if (kernel.empty()) return best_t;
    for (std::size_t i = 0; i < grid.n_points(); ++i) {
        const double t = grid.at(i);
        if (t <= s) continue;
        const QuantumChannel ch = family.evaluate(t);
        double norm = 0.0;
        for (const auto& k : kernel) norm = std::max(norm, trace_norm(ch.apply(k)));
        if (norm > best_norm) {
            best_norm = norm;
            best_t = t;
        }
    }
    return best_t;
}

}  // namespace

RunReport run_pipeline(const ScenarioConfig& config) {
    RunReport report;
    report.tool_version = kVersion;
    report.config_echo = to_json(config);

    const DynamicalFamily family = build_model(config.model_id, config.model_params);

    if (config.flags.scan) {
        ScanOptions options;
        options.tol = config.tol;
        options.seed = config.seed;
        options.with_rank = config.flags.rank;
        options.with_rhp = config.flags.rhp;
        report.divisibility = scan_cp_divisibility(family, config.grid, options);
    }

    // Decide which (s, t) pairs get witnesses.
    std::vector<std::pair<double, double>> witness_times;
    if (config.flags.witness) {
        if (config.witness_s) {
            witness_times.emplace_back(*config.witness_s,
                                       config.witness_t.value_or(config.grid.t_end()));
        } else if (report.divisibility && !report.divisibility->non_cp_intervals.empty()) {
            // Certify across one grid step at the interval start: the step map
            // there is non-CP by the scan verdict, while the map across the
            // whole interval may well be CP again.
            for (const auto& interval : report.divisibility->non_cp_intervals) {
                witness_times.emplace_back(
                    interval.first, std::min(interval.first + config.grid.step(), interval.second));
            }
        } else {
            witness_times.emplace_back(config.grid.t_start(), config.grid.t_end());
        }
    }

    for (const auto& [s, t] : witness_times) {
        try {
            report.witnesses.push_back(make_witness_record(family, config, s, t));
        } catch (const SingularMap&) {
            try {
                const double probe = best_kernel_probe_time(family, config.grid, s, config.tol);
                report.kernel_witnesses.push_back(
                    kernel_witness(family, s, probe, 0.9, config.tol));
            } catch (const Error& e) {
                report.warnings.push_back("kernel witness at s = " + std::to_string(s) +
                                          " failed: " + e.what());
            }
        } catch (const Error& e) {
            report.warnings.push_back("witness at s = " + std::to_string(s) +
                                      " failed: " + e.what());
        }
    }

    // A flagged rank increase is a divisibility obstruction; surface the kernel
    // pair even when every non-singular step classified fine.
    if (report.divisibility && report.divisibility->divisibility_obstruction &&
        report.kernel_witnesses.empty()) {
        const double s = report.divisibility->divisibility_obstruction->first;
        try {
            const double probe = best_kernel_probe_time(family, config.grid, s, config.tol);
            report.kernel_witnesses.push_back(kernel_witness(family, s, probe, 0.9, config.tol));
        } catch (const Error& e) {
            report.warnings.push_back("kernel witness at obstruction failed: " +
                                      std::string(e.what()));
        }
    }

    if (config.flags.random_trajectories > 0 || config.flags.blp) {
        TrajectorySummary summary;
        summary.random_pairs = config.flags.random_trajectories;
        Rng rng(Rng::mix(config.seed, 0x72616a64));  // dedicated trajectory stream
        for (std::size_t i = 0; i < config.flags.random_trajectories; ++i) {
            const DensityOperator r1 = rng.random_density(family.dim());
            const DensityOperator r2 = rng.random_density(family.dim());
            const Trajectory traj = trajectory(family, r1, r2, config.grid, 0);
            for (std::size_t k = 0; k + 1 < traj.values.size(); ++k) {
                const double inc = traj.values[k + 1] - traj.values[k];
                summary.max_step_increase = std::max(summary.max_step_increase, inc);
                if (inc > 1e-9) summary.all_monotone = false;
            }
        }
        if (config.flags.blp && !report.witnesses.empty()) {
            const WitnessRecord& record = report.witnesses.front();
            const Trajectory traj =
                trajectory(family, record.pair.rho1_initial, record.pair.rho2_initial,
                           config.grid, record.pair.ancilla_dim);
            summary.blp = blp_integral(traj);
            summary.witness_trajectory = traj;
        }
        report.trajectories = summary;
    }

    for (const auto& record : report.witnesses) {
        if (record.certificate.gain > config.tol.backflow_gain) report.backflow_detected = true;
    }
    for (const auto& kernel : report.kernel_witnesses) {
        if (kernel.norm_at_t - kernel.norm_at_s > config.tol.backflow_gain) {
            report.backflow_detected = true;
        }
    }
    // A positive backflow integral along the witness trajectory is witnessed
    // backflow even when the endpoint-to-endpoint gain happens to cancel.
    if (report.trajectories && report.trajectories->blp &&
        *report.trajectories->blp > config.tol.backflow_gain) {
        report.backflow_detected = true;
    }
    report.verdict = report.backflow_detected ? "backflow_witnessed" : "cp_divisible_on_grid";
    return report;
}

Json to_json(const RunReport& report) {
    Json witnesses = Json::array();
    for (const auto& record : report.witnesses) {
        Json entry{{"pair", to_json(record.pair)},
                   {"certificate", to_json(record.certificate)}};
        entry["separable_pair"] =
            record.separable_pair ? to_json(*record.separable_pair) : Json(nullptr);
        entry["separable_certificate"] = record.separable_certificate
                                             ? to_json(*record.separable_certificate)
                                             : Json(nullptr);
        witnesses.push_back(std::move(entry));
    }
    Json kernels = Json::array();
    for (const auto& pair : report.kernel_witnesses) kernels.push_back(to_json(pair));

    Json trajectories = nullptr;
    if (report.trajectories) {
        const TrajectorySummary& s = *report.trajectories;
        trajectories = Json{{"random_pairs", s.random_pairs},
                            {"all_monotone", s.all_monotone},
                            {"max_step_increase", s.max_step_increase},
                            {"witness_trajectory", s.witness_trajectory
                                                       ? to_json(*s.witness_trajectory)
                                                       : Json(nullptr)},
                            {"blp", s.blp ? Json(*s.blp) : Json(nullptr)}};
    }

    return Json{{"tool_version", report.tool_version},
                {"config", report.config_echo},
                {"divisibility", report.divisibility ? to_json(*report.divisibility)
                                                     : Json(nullptr)},
                {"witnesses", std::move(witnesses)},
                {"kernel_witnesses", std::move(kernels)},
                {"trajectories", std::move(trajectories)},
                {"warnings", report.warnings},
                {"backflow_detected", report.backflow_detected},
                {"verdict", report.verdict}};
}

void write_outputs(const RunReport& report, const ScenarioConfig& config) {
    namespace fs = std::filesystem;
    fs::create_directories(config.output_dir);
    {
        std::ofstream out(fs::path(config.output_dir) / "report.json", std::ios::binary);
        out << to_json(report).dump(2) << '\n';
    }
    if (report.divisibility) {
        std::ofstream out(fs::path(config.output_dir) / "scan.csv", std::ios::binary);
        out << report_csv(*report.divisibility);
    }
    if (report.trajectories && report.trajectories->witness_trajectory) {
        std::ofstream out(fs::path(config.output_dir) / "witness_trajectory.csv",
                          std::ios::binary);
        out << trajectory_csv(*report.trajectories->witness_trajectory);
    }
}

int exit_code_for(const RunReport& report) { return report.backflow_detected ? 3 : 0; }

}  // namespace backflow
