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

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "backflow/errors.hpp"
#include "backflow/pipeline.hpp"
#include "backflow/version.hpp"

namespace {

using backflow::ScenarioConfig;

struct CommonOpts {
    std::string config_path;
    std::string out_dir;
    std::string grid_spec;
    double tol = -1.0;
    std::int64_t seed = -1;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--config", opts.config_path, "scenario configuration (JSON)")->required();
    cmd->add_option("--out", opts.out_dir, "output directory (overrides config)");
    cmd->add_option("--grid", opts.grid_spec, "grid override t0:t1:n");
    cmd->add_option("--tol", opts.tol, "CP verdict tolerance override");
    cmd->add_option("--seed", opts.seed, "random seed override");
}

ScenarioConfig load_config(const CommonOpts& opts) {
    ScenarioConfig config = backflow::config_from_json(backflow::load_json_file(opts.config_path));
    if (!opts.out_dir.empty()) config.output_dir = opts.out_dir;
    if (!opts.grid_spec.empty()) {
        const auto first = opts.grid_spec.find(':');
        const auto second = opts.grid_spec.find(':', first + 1);
        if (first == std::string::npos || second == std::string::npos) {
            throw backflow::ConfigError("--grid expects t0:t1:n");
        }
        config.grid = backflow::TimeGrid(
            std::stod(opts.grid_spec.substr(0, first)),
            std::stod(opts.grid_spec.substr(first + 1, second - first - 1)),
            static_cast<std::size_t>(std::stoull(opts.grid_spec.substr(second + 1))));
    }
    if (opts.tol >= 0.0) config.tol.cp = opts.tol;
    if (opts.seed >= 0) config.seed = static_cast<std::uint64_t>(opts.seed);
    return config;
}

// Runs the pipeline, writes outputs, prints the stdout summary. The wall clock
// stays out of report.json so identical configurations produce byte-identical
// reports.
int execute(ScenarioConfig config, bool dump_family) {
    const auto started = std::chrono::steady_clock::now();
    const backflow::RunReport report = backflow::run_pipeline(config);
    backflow::write_outputs(report, config);
    if (dump_family) {
        const backflow::DynamicalFamily family =
            backflow::build_model(config.model_id, config.model_params);
        for (std::size_t i = 0; i < config.grid.n_points(); ++i) {
            (void)family.evaluate(config.grid.at(i));
        }
        std::ofstream out(std::filesystem::path(config.output_dir) / "family.json",
                          std::ios::binary);
        out << backflow::family_table_json(family).dump(2) << '\n';
    }
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();

    std::cout << "model: " << config.model_id << '\n';
    std::cout << "grid: [" << config.grid.t_start() << ", " << config.grid.t_end() << "] x "
              << config.grid.n_points() << '\n';
    if (report.divisibility) {
        std::cout << "steps: " << report.divisibility->steps.size()
                  << ", non-CP intervals: " << report.divisibility->non_cp_intervals.size();
        if (report.divisibility->divisibility_obstruction) {
            std::cout << ", divisibility obstruction at ["
                      << report.divisibility->divisibility_obstruction->first << ", "
                      << report.divisibility->divisibility_obstruction->second << "]";
        }
        std::cout << '\n';
    }
    double max_gain = 0.0;
    for (const auto& record : report.witnesses) {
        max_gain = std::max(max_gain, record.certificate.gain);
    }
    for (const auto& kernel : report.kernel_witnesses) {
        max_gain = std::max(max_gain, kernel.norm_at_t - kernel.norm_at_s);
    }
    std::cout << "witnesses: " << report.witnesses.size() << " (+"
              << report.kernel_witnesses.size() << " kernel), max gain " << max_gain << '\n';
    for (const auto& warning : report.warnings) std::cout << "warning: " << warning << '\n';
    std::cout << "verdict: " << report.verdict << '\n';
    std::cout << "report: " << config.output_dir << "/report.json\n";
    std::cout << "wall clock: " << wall << " s\n";
    return backflow::exit_code_for(report);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"CP-divisibility analysis and constructive information-backflow witnesses"};
    app.set_version_flag("--version", backflow::kVersion);
    app.require_subcommand(1);

    CommonOpts run_opts, scan_opts, witness_opts, traj_opts, validate_opts;
    double witness_s = -1.0, witness_t = -1.0, eta = -1.0;
    bool run_separable = false, witness_separable = false;
    std::size_t random_pairs = 0;
    bool dump_family = false;

    CLI::App* run_cmd = app.add_subcommand("run", "full pipeline: scan, witness, verify, report");
    add_common(run_cmd, run_opts);
    run_cmd->add_flag("--separable", run_separable, "also certify separable witness pairs");
    run_cmd->add_flag("--dump-family", dump_family, "export the evaluated channel table");

    CLI::App* scan_cmd = app.add_subcommand("scan", "CP-divisibility scan only");
    add_common(scan_cmd, scan_opts);

    CLI::App* witness_cmd =
        app.add_subcommand("witness", "construct and verify a witness pair at --s, --t");
    add_common(witness_cmd, witness_opts);
    witness_cmd->add_option("--s", witness_s, "anchor time s")->required();
    witness_cmd->add_option("--t", witness_t, "verification time t (default: grid end)");
    witness_cmd->add_option("--eta", eta, "safety factor in (0, 1)");
    witness_cmd->add_flag("--separable", witness_separable, "also certify a separable variant");

    CLI::App* traj_cmd =
        app.add_subcommand("trajectory", "trace-distance trajectories for the witness pair");
    add_common(traj_cmd, traj_opts);
    traj_cmd->add_option("--s", witness_s, "anchor time for the witness pair");
    traj_cmd->add_option("--random", random_pairs, "system-only random pairs to probe");

    CLI::App* models_cmd = app.add_subcommand("models", "list the model zoo");

    CLI::App* validate_cmd = app.add_subcommand("validate", "configuration dry-run");
    add_common(validate_cmd, validate_opts);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n\n" << app.help() << std::flush;
        return 2;
    }

    try {
        if (models_cmd->parsed()) {
            for (const auto& info : backflow::model_registry()) {
                std::cout << info.id << ": " << info.description << '\n';
                if (info.params.empty()) {
                    std::cout << "  (no parameters)\n";
                } else {
                    for (const auto& param : info.params) {
                        std::cout << "  " << param.name << ": " << param.description
                                  << " (default " << param.default_value << ")\n";
                    }
                }
            }
            return 0;
        }
        if (validate_cmd->parsed()) {
            const ScenarioConfig config = load_config(validate_opts);
            (void)backflow::build_model(config.model_id, config.model_params);
            std::cout << "ok: " << config.model_id << " on [" << config.grid.t_start() << ", "
                      << config.grid.t_end() << "] x " << config.grid.n_points() << '\n';
            return 0;
        }
        if (run_cmd->parsed()) {
            ScenarioConfig config = load_config(run_opts);
            if (run_separable) config.flags.separable = true;
            return execute(std::move(config), dump_family);
        }
        if (scan_cmd->parsed()) {
            ScenarioConfig config = load_config(scan_opts);
            config.flags.scan = true;
            config.flags.witness = false;
            config.flags.separable = false;
            config.flags.blp = false;
            config.flags.random_trajectories = 0;
            return execute(std::move(config), false);
        }
        if (witness_cmd->parsed()) {
            ScenarioConfig config = load_config(witness_opts);
            config.flags.scan = false;
            config.flags.witness = true;
            config.flags.separable = witness_separable;
            config.witness_s = witness_s;
            if (witness_t >= 0.0) config.witness_t = witness_t;
            if (eta > 0.0) config.witness_eta = eta;
            return execute(std::move(config), false);
        }
        if (traj_cmd->parsed()) {
            ScenarioConfig config = load_config(traj_opts);
            config.flags.scan = false;
            config.flags.witness = true;
            config.flags.blp = true;
            config.flags.random_trajectories = random_pairs;
            if (witness_s >= 0.0) config.witness_s = witness_s;
            return execute(std::move(config), false);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}
