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

#include "backflow/serialization.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "backflow/errors.hpp"

namespace backflow {

namespace {

Json double_or_null(double v) {
    if (std::isnan(v)) return nullptr;
    return v;
}

std::string format_double(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

}  // namespace

Json to_json(const ComplexMatrix& m) {
    Json entries = Json::array();
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c)
            entries.push_back(Json::array({m(r, c).real(), m(r, c).imag()}));
    return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(entries)}};
}

ComplexMatrix matrix_from_json(const Json& j) {
    const auto rows = j.at("rows").get<std::size_t>();
    const auto cols = j.at("cols").get<std::size_t>();
    const auto& entries = j.at("entries");
    if (entries.size() != rows * cols) {
        throw ConfigError("matrix_from_json: entry count does not match rows*cols");
    }
    ComplexMatrix m(rows, cols);
    std::size_t i = 0;
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c, ++i)
            m(r, c) = Complex{entries[i].at(0).get<double>(), entries[i].at(1).get<double>()};
    return m;
}

Json to_json(const QuantumChannel& c) {
    const ComplexMatrix& s = c.superoperator();
    Json superop = Json::array();
    for (std::size_t r = 0; r < s.rows(); ++r)
        for (std::size_t col = 0; col < s.cols(); ++col)
            superop.push_back(Json::array({s(r, col).real(), s(r, col).imag()}));
    return Json{{"dim", c.dim()}, {"superop", std::move(superop)}};
}

QuantumChannel channel_from_json(const Json& j) {
    const auto dim = j.at("dim").get<std::size_t>();
    const std::size_t d2 = dim * dim;
    const auto& superop = j.at("superop");
    if (superop.size() != d2 * d2) {
        throw ConfigError("channel_from_json: superop must hold dim^4 entries");
    }
    ComplexMatrix s(d2, d2);
    std::size_t i = 0;
    for (std::size_t r = 0; r < d2; ++r)
        for (std::size_t c = 0; c < d2; ++c, ++i)
            s(r, c) = Complex{superop[i].at(0).get<double>(), superop[i].at(1).get<double>()};
    return QuantumChannel::from_superoperator(dim, std::move(s));
}

Json to_json(const TimeGrid& grid) {
    return Json{{"t_start", grid.t_start()}, {"t_end", grid.t_end()}, {"n_points", grid.n_points()}};
}

TimeGrid grid_from_json(const Json& j) {
    return TimeGrid(j.at("t_start").get<double>(), j.at("t_end").get<double>(),
                    j.at("n_points").get<std::size_t>());
}

Json to_json(const Tolerances& tol) {
    return Json{{"hermiticity", tol.hermiticity},
                {"hermitize_accept", tol.hermitize_accept},
                {"trace_accept", tol.trace_accept},
                {"density_psd", tol.density_psd},
                {"eig_residual", tol.eig_residual},
                {"cp", tol.cp},
                {"tp", tol.tp},
                {"positivity_sample", tol.positivity_sample},
                {"positivity_samples", tol.positivity_samples},
                {"cond_limit", tol.cond_limit},
                {"singular_rel", tol.singular_rel},
                {"rank_rel", tol.rank_rel},
                {"family_tp", tol.family_tp},
                {"integrator_tp_drift", tol.integrator_tp_drift},
                {"weight_resolution", tol.weight_resolution},
                {"degenerate_weight", tol.degenerate_weight},
                {"kernel_image_norm", tol.kernel_image_norm},
                {"separability_psd", tol.separability_psd},
                {"backflow_gain", tol.backflow_gain}};
}

Tolerances tolerances_from_json(const Json& j, const Tolerances& base) {
    Tolerances tol = base;
    const auto get = [&j](const char* key, double& slot) {
        if (j.contains(key)) slot = j.at(key).get<double>();
    };
    get("hermiticity", tol.hermiticity);
    get("hermitize_accept", tol.hermitize_accept);
    get("trace_accept", tol.trace_accept);
    get("density_psd", tol.density_psd);
    get("eig_residual", tol.eig_residual);
    get("cp", tol.cp);
    get("tp", tol.tp);
    get("positivity_sample", tol.positivity_sample);
    get("cond_limit", tol.cond_limit);
    get("singular_rel", tol.singular_rel);
    get("rank_rel", tol.rank_rel);
    get("family_tp", tol.family_tp);
    get("integrator_tp_drift", tol.integrator_tp_drift);
    get("weight_resolution", tol.weight_resolution);
    get("degenerate_weight", tol.degenerate_weight);
    get("kernel_image_norm", tol.kernel_image_norm);
    get("separability_psd", tol.separability_psd);
    get("backflow_gain", tol.backflow_gain);
    if (j.contains("positivity_samples")) {
        tol.positivity_samples = j.at("positivity_samples").get<std::size_t>();
    }
    return tol;
}

const char* to_string(StepStatus status) {
    switch (status) {
        case StepStatus::ok: return "ok";
        case StepStatus::near_singular: return "near_singular";
        case StepStatus::singular: return "singular";
    }
    return "unknown";
}

const char* to_string(PositivityMethod method) {
    switch (method) {
        case PositivityMethod::exact: return "exact";
        case PositivityMethod::sampled: return "sampled";
        case PositivityMethod::skipped: return "skipped";
    }
    return "unknown";
}

const char* to_string(CertificationMethod method) {
    switch (method) {
        case CertificationMethod::none: return "none";
        case CertificationMethod::ppt_exact: return "ppt_exact";
        case CertificationMethod::frobenius_ball: return "frobenius_ball";
    }
    return "unknown";
}

Json to_json(const DivisibilityReport& report) {
    Json steps = Json::array();
    for (const auto& step : report.steps) {
        Json entry{{"s", step.s},
                   {"t", step.t},
                   {"status", to_string(step.status)},
                   {"min_choi_eig", double_or_null(step.min_choi_eig)},
                   {"cp", step.cp},
                   {"positivity", Json{{"method", to_string(step.positivity_method)},
                                       {"positive", step.positivity_method ==
                                                            PositivityMethod::skipped
                                                        ? Json(nullptr)
                                                        : Json(step.positive)}}},
                   {"rank_at_s", step.rank_at_s},
                   {"g", double_or_null(step.rhp_g)},
                   {"condition_number", double_or_null(step.condition_number)}};
        steps.push_back(std::move(entry));
    }
    Json intervals = Json::array();
    for (const auto& [s, t] : report.non_cp_intervals) intervals.push_back(Json::array({s, t}));
    Json obstruction = nullptr;
    if (report.divisibility_obstruction) {
        obstruction = Json::array(
            {report.divisibility_obstruction->first, report.divisibility_obstruction->second});
    }
    return Json{{"grid", to_json(report.grid)},
                {"cp_tol", report.cp_tol},
                {"cond_limit", report.cond_limit},
                {"rank_rel_tol", report.rank_rel_tol},
                {"steps", std::move(steps)},
                {"ranks", report.ranks},
                {"non_cp_intervals", std::move(intervals)},
                {"divisibility_obstruction", std::move(obstruction)}};
}

Json to_json(const WitnessPair& pair) {
    return Json{{"s", pair.s},
                {"p", pair.p},
                {"system_dim", pair.system_dim},
                {"ancilla_dim", pair.ancilla_dim},
                {"sigma", to_json(pair.sigma.matrix())},
                {"rho1_initial", to_json(pair.rho1_initial.matrix())},
                {"rho2_initial", to_json(pair.rho2_initial.matrix())},
                {"separable_certified", pair.separable_certified},
                {"certification_method", to_string(pair.method)}};
}

Json to_json(const WitnessCertificate& cert) {
    return Json{{"s", cert.s},
                {"t", cert.t},
                {"norm_at_s", cert.norm_at_s},
                {"norm_at_t", cert.norm_at_t},
                {"gain", cert.gain},
                {"choi_excess", cert.choi_excess ? Json(*cert.choi_excess) : Json(nullptr)}};
}

Json to_json(const KernelWitnessPair& pair) {
    return Json{{"s", pair.s},
                {"t", pair.t},
                {"epsilon", pair.epsilon},
                {"kernel_element", to_json(pair.kernel_element.matrix())},
                {"rho1", to_json(pair.rho1.matrix())},
                {"rho2", to_json(pair.rho2.matrix())},
                {"norm_at_s", pair.norm_at_s},
                {"norm_at_t", pair.norm_at_t}};
}

Json to_json(const Trajectory& traj) {
    Json times = Json::array();
    for (std::size_t i = 0; i < traj.grid.n_points(); ++i) times.push_back(traj.grid.at(i));
    return Json{{"grid", to_json(traj.grid)}, {"times", std::move(times)}, {"values", traj.values}};
}

Json family_table_json(const DynamicalFamily& family) {
    Json table = Json::array();
    for (const auto& [t, channel] : family.cached_snapshot()) {
        table.push_back(Json{{"t", t}, {"channel", to_json(channel)}});
    }
    return Json{{"dim", family.dim()}, {"label", family.label()}, {"table", std::move(table)}};
}

std::string report_csv(const DivisibilityReport& report) {
    std::ostringstream os;
    os << "t,min_choi_eig,cp,rank,g\n";
    for (const auto& step : report.steps) {
        os << format_double(step.s) << ',';
        os << (std::isnan(step.min_choi_eig) ? "nan" : format_double(step.min_choi_eig)) << ',';
        os << (step.status == StepStatus::ok ? (step.cp ? "1" : "0") : "nan") << ',';
        os << step.rank_at_s << ',';
        os << (std::isnan(step.rhp_g) ? "nan" : format_double(step.rhp_g)) << '\n';
    }
    return os.str();
}

std::string trajectory_csv(const Trajectory& traj) {
    std::ostringstream os;
    os << "t,value\n";
    for (std::size_t i = 0; i < traj.values.size(); ++i) {
        os << format_double(traj.grid.at(i)) << ',' << format_double(traj.values[i]) << '\n';
    }
    return os.str();
}

Json parse_json_text(const std::string& text, const std::string& origin) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        // nlohmann reports a byte offset; translate to line:column.
        std::size_t line = 1, col = 1;
        const std::size_t stop = std::min(e.byte, text.size());
        for (std::size_t i = 0; i < stop; ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw ConfigError(origin + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " +
                          e.what());
    }
}

Json load_json_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError(path + ": cannot open file");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_json_text(buffer.str(), path);
}

}  // namespace backflow
