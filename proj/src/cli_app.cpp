// Copyright 2026 The cqest developers

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cqest/cli_app.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include <CLI11.hpp>

#include "cqest/bounds.hpp"
#include "cqest/complex_map.hpp"
#include "cqest/errors.hpp"
#include "cqest/linalg.hpp"
#include "cqest/qfim.hpp"
#include "cqest/version.hpp"

namespace cqest::cli {

namespace {

void check_allowed(const Json &j, const std::vector<std::string> &allowed,
                   const std::string &context) {
    if (!j.is_object()) {
        throw ConfigError(context + " must be a JSON object");
    }
    for (const auto &[key, value] : j.items()) {
        (void)value;
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
            throw ConfigError("unknown field \"" + key + "\" in " + context);
        }
    }
}

std::vector<std::pair<Complex, Complex>> parse_keys(const Json &j) {
    if (!j.is_array() || j.size() % 2 != 0 || j.empty()) {
        throw ConfigError("model.keys must hold an (eps, eta) pair per mode");
    }
    std::vector<std::pair<Complex, Complex>> keys;
    for (std::size_t m = 0; m < j.size(); m += 2) {
        keys.emplace_back(json_to_complex(j[m]), json_to_complex(j[m + 1]));
    }
    return keys;
}

ModelConfig parse_model(const Json &j) {
    check_allowed(j, {"name", "keys", "truncation", "mixing_eps"}, "model");
    ModelConfig model;
    if (j.contains("name")) {
        model.name = j["name"].get<std::string>();
    }
    if (j.contains("keys")) {
        model.keys = parse_keys(j["keys"]);
    }
    if (j.contains("truncation")) {
        model.truncation = j["truncation"].get<Eigen::Index>();
    }
    if (j.contains("mixing_eps")) {
        model.mixing_eps = j["mixing_eps"].get<double>();
    }
    return model;
}

NumericPolicy parse_policy(const Json &j, FdPolicy &fd) {
    check_allowed(j,
                  {"fd_step", "fd_scaling", "hermiticity_tol", "defect_threshold",
                   "sld_kernel_tol", "rld_rank_gate", "singular_fim_tol",
                   "attainability_tol", "psd_tol"},
                  "policy");
    NumericPolicy policy;
    if (j.contains("fd_step")) {
        fd.step = j["fd_step"].get<double>();
    }
    if (j.contains("fd_scaling")) {
        const std::string mode = j["fd_scaling"].get<std::string>();
        if (mode == "relative") {
            fd.scaling = FdPolicy::Scaling::Relative;
        } else if (mode == "absolute") {
            fd.scaling = FdPolicy::Scaling::Absolute;
        } else {
            throw ConfigError("policy.fd_scaling must be \"relative\" or \"absolute\"");
        }
    }
    if (j.contains("hermiticity_tol")) policy.hermiticity_tol = j["hermiticity_tol"].get<double>();
    if (j.contains("defect_threshold")) policy.defect_threshold = j["defect_threshold"].get<double>();
    if (j.contains("sld_kernel_tol")) policy.sld_kernel_tol = j["sld_kernel_tol"].get<double>();
    if (j.contains("rld_rank_gate")) policy.rld_rank_gate = j["rld_rank_gate"].get<double>();
    if (j.contains("singular_fim_tol")) policy.singular_fim_tol = j["singular_fim_tol"].get<double>();
    if (j.contains("attainability_tol")) policy.attainability_tol = j["attainability_tol"].get<double>();
    if (j.contains("psd_tol")) policy.psd_tol = j["psd_tol"].get<double>();
    return policy;
}

} // namespace

RunConfig parse_config(const Json &j) {
    check_allowed(j,
                  {"model", "policy", "z", "kind", "representation", "seed", "trials",
                   "dims", "shots", "phases", "weight", "quadrature_variance", "out",
                   "csv"},
                  "config");
    RunConfig config;
    if (j.contains("model")) {
        config.model = parse_model(j["model"]);
    }
    if (j.contains("policy")) {
        config.policy = parse_policy(j["policy"], config.fd);
    }
    if (j.contains("z")) {
        config.z = json_to_complex(j["z"]);
    }
    if (j.contains("kind")) {
        config.kind = j["kind"].get<std::string>();
    }
    if (j.contains("representation")) {
        config.representation = j["representation"].get<std::string>();
    }
    if (j.contains("seed")) {
        config.seed = j["seed"].get<std::uint64_t>();
    }
    if (j.contains("trials")) {
        config.trials = j["trials"].get<int>();
    }
    if (j.contains("dims")) {
        const Json &dims = j["dims"];
        if (!dims.is_array() || dims.size() != 2) {
            throw ConfigError("dims must be a two-element [d, k] array");
        }
        config.dim_d = dims[0].get<Eigen::Index>();
        config.dim_k = dims[1].get<Eigen::Index>();
    }
    if (j.contains("shots")) {
        config.shots = j["shots"].get<Eigen::Index>();
    }
    if (j.contains("phases")) {
        config.phases = j["phases"].get<std::vector<double>>();
    }
    if (j.contains("weight")) {
        config.weight = json_to_complex(j["weight"]);
    }
    if (j.contains("quadrature_variance")) {
        config.quadrature_variance = j["quadrature_variance"].get<double>();
    }
    if (j.contains("out")) {
        config.out_path = j["out"].get<std::string>();
    }
    if (j.contains("csv")) {
        config.csv_path = j["csv"].get<std::string>();
    }
    if (config.kind != "symmetric" && config.kind != "right") {
        throw ConfigError("kind must be \"symmetric\" or \"right\"");
    }
    if (config.representation != "complex" && config.representation != "real") {
        throw ConfigError("representation must be \"complex\" or \"real\"");
    }
    return config;
}

BuiltModel build_model(const ModelConfig &config) {
    BuiltModel built;
    if (config.name == "coherent-1mode" || config.name == "coherent-2mode") {
        const Eigen::Index modes = config.name == "coherent-1mode" ? 1 : 2;
        built.is_coherent = true;
        built.keys.modes = config.keys;
        if (built.keys.modes.empty()) {
            built.keys.modes = modes == 1
                                   ? std::vector<std::pair<Complex, Complex>>{{1.0, 0.0}}
                                   : std::vector<std::pair<Complex, Complex>>{{1.0, 0.0},
                                                                              {0.0, 1.0}};
        }
        if (built.keys.num_modes() != modes) {
            throw ConfigError(config.name + " expects " + std::to_string(modes) +
                              " key pair(s)");
        }
        built.fock.truncation = config.truncation;
        built.pure = coherent_model(built.keys, built.fock);
        if (config.mixing_eps > 0.0) {
            built.is_pure = false;
            built.density = epsilon_mix_model(built.pure, config.mixing_eps);
        } else {
            built.is_pure = true;
            built.density = to_density_model(built.pure);
        }
        return built;
    }
    if (config.name == "qubit-test") {
        built.is_pure = false;
        built.density = builtin_qubit_model(default_qubit_spec());
        return built;
    }
    throw ConfigError("unknown model \"" + config.name +
                      "\"; available: coherent-1mode, coherent-2mode, qubit-test");
}

namespace {

Json model_echo(const RunConfig &config) {
    Json m = Json::object();
    m["name"] = config.model.name;
    Json keys = Json::array();
    for (const auto &[eps, eta] : config.model.keys) {
        keys.push_back(complex_to_json(eps));
        keys.push_back(complex_to_json(eta));
    }
    m["keys"] = std::move(keys);
    m["truncation"] = config.model.truncation;
    m["mixing_eps"] = config.model.mixing_eps;
    return m;
}

Report make_report(const std::string &command, const RunConfig &config) {
    Report report;
    report.command = command;
    report.version = std::string(kVersion);
    report.seed = config.seed;
    report.inputs = Json::object();
    report.inputs["model"] = model_echo(config);
    report.inputs["z"] = complex_to_json(config.z);
    report.inputs["kind"] = config.kind;
    report.inputs["seed"] = config.seed;
    return report;
}

std::vector<double> default_phases(Eigen::Index modes) {
    std::vector<double> phases(static_cast<std::size_t>(modes));
    for (Eigen::Index m = 0; m < modes; ++m) {
        phases[static_cast<std::size_t>(m)] =
            static_cast<double>(m) * std::numbers::pi / 2.0;
    }
    return phases;
}

const char *const kPropertyNames[9] = {"linearity",  "hermiticity", "inverse",
                                       "psd",        "adjoint",     "product",
                                       "trace",      "spectral",    "conjugation"};

} // namespace

Report cmd_verify_map(const RunConfig &config) {
    if (config.trials < 1) {
        throw ConfigError("verify-map: trials must be >= 1");
    }
    if (config.dim_d < 1 || config.dim_k < 1) {
        throw ConfigError("verify-map: dims must be >= 1");
    }
    MapPropertyReport props = verify_map_properties(
        config.trials, MapDims{config.dim_d, config.dim_k}, config.seed, config.policy);
    if (config.inject_map_error) {
        // Test hook: force the failure path by registering an artificial
        // violation on the first property.
        props.max_violation[0] = std::max(props.max_violation[0], 1e-3);
    }

    Report report = make_report("verify-map", config);
    report.inputs["trials"] = config.trials;
    report.inputs["dims"] = Json::array({config.dim_d, config.dim_k});
    constexpr double tol = 1e-9;
    for (int i = 0; i < 9; ++i) {
        report.add_scalar(std::string("violation_") + kPropertyNames[i],
                          props.max_violation[i]);
    }
    report.diagnostics["resamples"] = props.resamples;
    report.diagnostics["tolerance"] = tol;
    report.diagnostics["injected_error"] = config.inject_map_error;
    report.consistent = props.all_pass(tol);
    return report;
}

Report cmd_qfim(const RunConfig &config) {
    const BuiltModel built = build_model(config.model);
    ParamPoint p;
    p.theta = CVector::Constant(1, config.z);

    Report report = make_report("qfim", config);
    report.inputs["representation"] = config.representation;

    const bool symmetric = config.kind == "symmetric";
    try {
        if (built.is_pure) {
            const PureDerivs derivs = pure_derivatives(built.pure, p, config.fd);
            const CMatrix real_fim = sqfim_real_pure(derivs);
            if (!symmetric) {
                const CMatrix inv = rqfim_inv_pure(derivs, config.policy);
                report.add_matrix("rqfim_inverse", inv);
                report.add_scalar("rank", static_cast<double>(
                                              robust_inverse(inv, 1e-10).rank));
                report.diagnostics["note"] =
                    "right FIM is undefined for pure states; reporting the "
                    "pure-state limit of its inverse";
                report.consistent = true;
                return report;
            }
            const QfimBlocks blocks = sqfim_pure_complex(derivs);
            if (config.representation == "real") {
                report.add_matrix("fim_real", real_fim);
                report.add_scalar("determinant_abs", std::abs(real_fim.determinant()));
                return report;
            }
            const CMatrix full = blocks.assemble();
            const CMatrix mapped = 0.25 * to_complex(real_fim);
            const double residual = relative_residual(mapped, full);
            report.add_matrix("J", blocks.j);
            report.add_matrix("Q", blocks.q);
            report.add_matrix("full", full);
            report.add_scalar("determinant_abs", std::abs(full.determinant()));
            report.add_scalar("cross_check_residual", residual);
            report.consistent = residual <= 1e-8;
            return report;
        }

        const DensityDerivs derivs = density_derivatives(built.density, p, config.fd);
        if (config.representation == "real") {
            const CMatrix real_fim = symmetric ? sqfim_real(derivs, config.policy)
                                               : rqfim_real(derivs, config.policy);
            report.add_matrix("fim_real", real_fim);
            report.add_scalar("determinant_abs", std::abs(real_fim.determinant()));
            return report;
        }
        const QfimBlocks blocks = symmetric ? sqfim_complex(derivs, config.policy)
                                            : rqfim_complex(derivs, config.policy);
        const CMatrix real_fim = symmetric ? sqfim_real(derivs, config.policy)
                                           : rqfim_real(derivs, config.policy);
        const CMatrix full = blocks.assemble();
        const CMatrix mapped = 0.25 * to_complex(real_fim);
        const double residual = relative_residual(mapped, full);
        report.add_matrix("J", blocks.j);
        report.add_matrix("Q", blocks.q);
        if (!symmetric) {
            report.add_matrix("J_star", blocks.j_star);
            report.add_matrix("Q_star", blocks.q_star);
        }
        report.add_matrix("full", full);
        report.add_scalar("determinant_abs", std::abs(full.determinant()));
        report.add_scalar("cross_check_residual", residual);
        report.consistent = residual <= 1e-8;
        return report;
    } catch (const RankDeficientError &err) {
        throw RankDeficientError(std::string(err.what()) +
                                 " (hint: mixing_eps 0 selects the pure-state path "
                                 "for coherent models)");
    }
}

Report cmd_crb(const RunConfig &config) {
    const BuiltModel built = build_model(config.model);
    ParamPoint p;
    p.theta = CVector::Constant(1, config.z);

    Report report = make_report("crb", config);
    const bool symmetric = config.kind == "symmetric";

    if (built.is_pure) {
        const PureDerivs derivs = pure_derivatives(built.pure, p, config.fd);
        const QfimBlocks sq = sqfim_pure_complex(derivs);
        const CMatrix commutators = attainability(derivs);
        report.add_matrix("attainability_commutators", commutators);
        report.diagnostics["attainable"] =
            attainability_ok(commutators, fim_scale(sq.assemble()), config.policy);

        if (symmetric) {
            BoundReport bound = crb_covariance(sq, config.policy);
            report.add_matrix("covariance_bound", bound.bound);
            report.add_scalar("determinant_abs", std::abs(bound.determinant));
            report.add_scalar("rank", static_cast<double>(bound.rank));
        } else {
            const CMatrix inv = rqfim_inv_pure(derivs, config.policy);
            BoundReport bound = crb_covariance_from_inverse(
                inv, CMatrix::Identity(inv.rows(), inv.cols()), FimKind::Right);
            report.add_matrix("covariance_bound", bound.bound);
            report.add_scalar("rank", static_cast<double>(bound.rank));
            if (bound.rank < inv.rows()) {
                report.diagnostics["note"] =
                    "right bound has deficient rank: only partial information "
                    "about the parameter is optimally estimable";
            }
        }
        if (config.weight) {
            WeightBlocks w;
            w.w = CMatrix::Constant(1, 1, *config.weight);
            w.x = CMatrix::Zero(1, 1);
            report.add_scalar("wmse_symmetric",
                              wmse_bound_symmetric(w, sq, config.policy));
            report.add_scalar(
                "wmse_right",
                wmse_bound_right(w, rqfim_inv_pure(derivs, config.policy), config.policy));
        }
        return report;
    }

    const DensityDerivs derivs = density_derivatives(built.density, p, config.fd);
    const QfimBlocks blocks = symmetric ? sqfim_complex(derivs, config.policy)
                                        : rqfim_complex(derivs, config.policy);
    BoundReport bound = crb_covariance(blocks, config.policy);
    report.add_matrix("covariance_bound", bound.bound);
    report.add_scalar("determinant_abs", std::abs(bound.determinant));
    report.add_scalar("rank", static_cast<double>(bound.rank));
    if (config.weight) {
        WeightBlocks w;
        w.w = CMatrix::Constant(1, 1, *config.weight);
        w.x = CMatrix::Zero(1, 1);
        if (symmetric) {
            report.add_scalar("wmse_symmetric", wmse_bound_symmetric(w, blocks, config.policy));
        } else {
            report.add_scalar(
                "wmse_right",
                wmse_bound_right(w, invert_fim(blocks.assemble(), config.policy),
                                 config.policy));
        }
    }
    return report;
}

Report cmd_simulate(const RunConfig &config) {
    const BuiltModel built = build_model(config.model);
    if (!built.is_coherent) {
        throw ConfigError("simulate requires a coherent model");
    }
    if (config.shots < 1) {
        throw ConfigError("simulate: shots must be >= 1");
    }
    HomodyneSpec spec;
    spec.shots = config.shots;
    spec.seed = config.seed;
    spec.quadrature_variance = config.quadrature_variance;
    spec.phases = config.phases.empty() ? default_phases(built.keys.num_modes())
                                        : config.phases;
    if (static_cast<Eigen::Index>(spec.phases.size()) != built.keys.num_modes()) {
        throw ConfigError("simulate: one quadrature phase per mode required");
    }

    Report report = make_report("simulate", config);
    report.inputs["shots"] = config.shots;
    report.inputs["phases"] = spec.phases;
    report.inputs["quadrature_variance"] = spec.quadrature_variance;

    const SampleSet samples = sample_homodyne(built.keys, config.z, spec);
    if (!config.csv_path.empty()) {
        std::ofstream csv(config.csv_path, std::ios::binary);
        if (!csv) {
            throw ConfigError("simulate: cannot open csv path " + config.csv_path);
        }
        csv << samples_to_csv(samples);
    }
    if (config.shots < 1000) {
        report.diagnostics["warning"] = "fewer than 1000 shots; estimates will be noisy";
    }

    // Classical information of the induced Gaussian outcomes.
    const ClassicalFimBlocks classical = gaussian_classical_fim(built.keys, spec);
    const EmpiricalFim empirical = empirical_fim(samples, built.keys);
    report.add_matrix("classical_fim", classical.assemble());
    report.add_matrix("empirical_fim", empirical.blocks.assemble());
    const double fim_deviation =
        relative_residual(empirical.blocks.assemble(), classical.assemble());
    report.add_scalar("empirical_fim_relative_deviation", fim_deviation);

    // Quantum side at the same point.
    ParamPoint p;
    p.theta = CVector::Constant(1, config.z);
    const QfimBlocks sq = sqfim_pure_complex(built.pure, p, config.fd);
    const CMatrix quantum = sq.assemble();
    const double scale = fim_scale(quantum);
    const PsdOrdering dominance =
        fim_dominance(classical.assemble(), quantum, 1e-8 * scale, config.policy);
    report.add_scalar("dominance_lambda_min", dominance.lambda_min);
    report.diagnostics["classical_dominated_by_quantum"] = dominance.holds;
    report.diagnostics["fim_saturation_margin"] = dominance.lambda_min;
    report.diagnostics["fim_saturated"] = dominance.lambda_min <= 1e-6 * scale;

    bool covariance_ok = true;
    if (built.keys.num_modes() == 2) {
        const EstimatorStats stats = estimate_two_mode(samples, built.keys);
        report.add_matrix("empirical_covariance", stats.covariance);
        report.diagnostics["estimate_mean"] = complex_to_json(stats.mean);
        try {
            BoundReport bound = crb_covariance(sq, config.policy);
            report.add_matrix("covariance_bound", bound.bound);
            const double stat_tol =
                5.0 * fim_scale(stats.covariance) /
                std::sqrt(static_cast<double>(std::max<Eigen::Index>(1, config.shots)));
            const PsdOrdering cov_vs_bound =
                psd_order(stats.covariance, bound.bound, stat_tol, config.policy);
            report.add_scalar("covariance_dominance_lambda_min", cov_vs_bound.lambda_min);
            report.diagnostics["covariance_dominates_bound"] = cov_vs_bound.holds;
            covariance_ok = cov_vs_bound.holds;
        } catch (const SingularMatrixError &) {
            report.diagnostics["covariance_bound"] =
                "FIM is singular at this key; no covariance bound exists";
        }
    } else {
        report.diagnostics["estimator"] =
            "linear-inversion estimator requires two modes; skipped";
    }

    report.consistent = dominance.holds && covariance_ok && fim_deviation <= 0.03;
    return report;
}

namespace {

CMatrix closed_form_sqfim(Complex eps, Complex eta) {
    const double s = std::norm(eps) + std::norm(eta);
    CMatrix m(2, 2);
    m(0, 0) = 2.0 * s;
    m(0, 1) = 4.0 * std::conj(eps) * eta;
    m(1, 0) = 4.0 * eps * std::conj(eta);
    m(1, 1) = 2.0 * s;
    return m;
}

CMatrix closed_form_k(Complex eps, Complex eta) {
    const double delta = std::norm(eps) - std::norm(eta);
    CMatrix m = CMatrix::Zero(2, 2);
    m(0, 0) = -2.0 * kImag * delta;
    m(1, 1) = 2.0 * kImag * delta;
    return m;
}

CMatrix closed_form_rqfim_inv(Complex eps, Complex eta) {
    const double delta = std::norm(eps) - std::norm(eta);
    CMatrix m(2, 2);
    m(0, 0) = std::norm(eps);
    m(0, 1) = -std::conj(eps) * eta;
    m(1, 0) = -eps * std::conj(eta);
    m(1, 1) = std::norm(eta);
    return m / (delta * delta);
}

} // namespace

Report cmd_demo_coherent(const RunConfig &config) {
    Report report = make_report("demo-coherent", config);
    const FockConfig fock{config.model.truncation};
    const Complex z = config.z;
    bool all_ok = true;
    const auto record_check = [&](const std::string &name, bool ok) {
        report.diagnostics[name] = ok;
        all_ok = all_ok && ok;
    };

    // Single-mode information matrix and its determinant at key (1, 1/2).
    {
        const CoherentKey key{{{Complex(1.0, 0.0), Complex(0.5, 0.0)}}};
        const PureModel model = coherent_model(key, fock);
        ParamPoint p;
        p.theta = CVector::Constant(1, z);
        const QfimBlocks blocks = sqfim_pure_complex(pure_derivatives(model, p, config.fd));
        const CMatrix full = blocks.assemble();
        const CMatrix expected = closed_form_sqfim(key.modes[0].first, key.modes[0].second);
        report.add_matrix("single_mode_sqfim", full);
        report.add_scalar("single_mode_sqfim_residual", relative_residual(full, expected));
        const double det = full.determinant().real();
        report.add_scalar("single_mode_determinant", det);
        record_check("check_single_mode_sqfim", relative_residual(full, expected) <= 1e-6);
        record_check("check_single_mode_determinant", std::abs(det - 9.0) <= 1e-6);

        // K matrix and the weighted-error relation at the same key.
        const KBlocks kb = k_blocks_pure(pure_derivatives(model, p, config.fd));
        const CMatrix kfull = kb.assemble();
        report.add_matrix("k_matrix", kfull);
        record_check("check_k_matrix",
                     relative_residual(kfull, closed_form_k(key.modes[0].first,
                                                            key.modes[0].second)) <= 1e-6);

        WeightBlocks w;
        w.w = CMatrix::Constant(1, 1, Complex(1.0, 0.0));
        w.x = CMatrix::Zero(1, 1);
        const double ws = wmse_bound_symmetric(w, blocks, config.policy);
        const double wr = wmse_bound_right(
            w, rqfim_inv_pure(pure_derivatives(model, p, config.fd), config.policy),
            config.policy);
        report.add_scalar("wmse_symmetric", ws);
        report.add_scalar("wmse_right", wr);
        const double delta = std::norm(key.modes[0].first) - std::norm(key.modes[0].second);
        record_check("check_wmse_relation",
                     std::abs((wr - ws) - 1.0 / std::abs(delta)) <= 1e-8);
    }

    // Obstruction at |eps| = |eta|: optimality holds but the bound does not exist.
    {
        const CoherentKey key{{{Complex(1.0, 0.0), Complex(1.0, 0.0)}}};
        const PureModel model = coherent_model(key, fock);
        ParamPoint p;
        p.theta = CVector::Constant(1, z);
        const PureDerivs derivs = pure_derivatives(model, p, config.fd);
        const QfimBlocks blocks = sqfim_pure_complex(derivs);
        const CMatrix commutators = attainability(derivs);
        report.add_matrix("obstruction_commutators", commutators);
        const bool attainable =
            attainability_ok(commutators, fim_scale(blocks.assemble()), config.policy);
        bool inversion_refused = false;
        try {
            crb_covariance(blocks, config.policy);
        } catch (const SingularMatrixError &) {
            inversion_refused = true;
        }
        report.diagnostics["obstruction"] =
            "optimality condition satisfied while the information matrix is "
            "singular: no single-mode scheme attains the symmetric bound";
        record_check("check_obstruction", attainable && inversion_refused);
    }

    // Two-mode resolution with key (1, 0, 0, 1).
    {
        const CoherentKey key{
            {{Complex(1.0, 0.0), Complex(0.0, 0.0)}, {Complex(0.0, 0.0), Complex(1.0, 0.0)}}};
        const PureModel model = coherent_model(key, fock);
        ParamPoint p;
        p.theta = CVector::Constant(1, z);
        const PureDerivs derivs = pure_derivatives(model, p, config.fd);
        const QfimBlocks blocks = sqfim_pure_complex(derivs);
        const CMatrix commutators = attainability(derivs);
        BoundReport bound = crb_covariance(blocks, config.policy);
        report.add_matrix("two_mode_attainability", commutators);
        report.add_matrix("two_mode_covariance_bound", bound.bound);
        const CMatrix quarter = 0.25 * CMatrix::Identity(2, 2);
        record_check("check_two_mode_attainable",
                     attainability_ok(commutators, fim_scale(blocks.assemble()),
                                      config.policy));
        record_check("check_two_mode_bound",
                     relative_residual(bound.bound, quarter) <= 1e-6);
    }

    // Rank-one right bound at key (1, 0).
    {
        const CoherentKey key{{{Complex(1.0, 0.0), Complex(0.0, 0.0)}}};
        const PureModel model = coherent_model(key, fock);
        ParamPoint p;
        p.theta = CVector::Constant(1, z);
        const CMatrix inv =
            rqfim_inv_pure(pure_derivatives(model, p, config.fd), config.policy);
        report.add_matrix("right_bound_key_10", inv);
        const Eigen::Index rank = robust_inverse(inv, 1e-10).rank;
        report.add_scalar("right_bound_rank", static_cast<double>(rank));
        record_check("check_right_bound",
                     relative_residual(inv, closed_form_rqfim_inv(Complex(1.0, 0.0),
                                                                  Complex(0.0, 0.0))) <=
                             1e-6 &&
                         rank == 1);
    }

    report.consistent = all_ok;
    return report;
}

namespace {

Complex parse_complex_flag(const std::string &text) {
    std::stringstream ss(text);
    double re = 0.0, im = 0.0;
    char comma = ',';
    ss >> re;
    if (ss >> comma) {
        if (comma != ',' || !(ss >> im)) {
            throw ConfigError("complex flag must be \"re\" or \"re,im\": " + text);
        }
    }
    return {re, im};
}

std::vector<double> parse_double_list(const std::string &text) {
    std::vector<double> values;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        values.push_back(std::stod(item));
    }
    return values;
}

std::vector<std::pair<Complex, Complex>> parse_keys_flag(const std::string &text) {
    const std::vector<double> raw = parse_double_list(text);
    if (raw.size() % 4 != 0 || raw.empty()) {
        throw ConfigError("--keys expects eps_re,eps_im,eta_re,eta_im per mode");
    }
    std::vector<std::pair<Complex, Complex>> keys;
    for (std::size_t m = 0; m < raw.size(); m += 4) {
        keys.emplace_back(Complex(raw[m], raw[m + 1]), Complex(raw[m + 2], raw[m + 3]));
    }
    return keys;
}

void emit(const Report &report, const std::string &out_path) {
    const std::string text = report.to_string();
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) {
            throw ConfigError("cannot open output path " + out_path);
        }
        out << text;
    }
}

} // namespace

int run_cli(int argc, const char *const *argv) {
    CLI::App app{"Quantum Fisher information and Cramer-Rao bounds for complex "
                 "parameters via Wirtinger calculus"};
    app.require_subcommand(1);

    std::string config_path, model_name, z_text, kind, representation, out_path, csv_path,
        keys_text, phases_text, weight_text;
    std::uint64_t seed = 0;
    int trials = 0;
    Eigen::Index truncation = 0, shots = 0;
    double fd_step = 0.0, mixing_eps = 0.0, variance = 0.0;
    std::vector<Eigen::Index> dims;

    const auto add_common = [&](CLI::App *cmd) {
        cmd->add_option("--config", config_path, "JSON config file (flags override it)");
        cmd->add_option("--seed", seed, "random seed (default 12345)");
        cmd->add_option("--out", out_path, "report output path (default stdout)");
    };
    const auto add_model = [&](CLI::App *cmd) {
        cmd->add_option("--model", model_name,
                        "builtin model: coherent-1mode, coherent-2mode, qubit-test");
        cmd->add_option("--z", z_text, "parameter value as \"re,im\" (default 0.3,0)");
        cmd->add_option("--keys", keys_text,
                        "encoding keys: eps_re,eps_im,eta_re,eta_im per mode");
        cmd->add_option("--truncation", truncation, "Fock truncation (default 40)");
        cmd->add_option("--mixing-eps", mixing_eps,
                        "isotropic mixing weight; 0 keeps the pure-state path");
        cmd->add_option("--fd-step", fd_step,
                        "finite-difference step (default cbrt(machine epsilon))");
    };

    CLI::App *verify = app.add_subcommand("verify-map", "run the map identity suite");
    add_common(verify);
    verify->add_option("--trials", trials, "random trials per property (default 100)");
    verify->add_option("--dims", dims, "map half-dimensions d k (default 2 2)")
        ->expected(2);
    verify->add_flag("--inject-map-error", "corrupt one identity (test hook)")
        ->group("");

    CLI::App *qfim_cmd = app.add_subcommand("qfim", "compute Fisher information blocks");
    add_common(qfim_cmd);
    add_model(qfim_cmd);
    qfim_cmd->add_option("--kind", kind, "symmetric or right (default symmetric)");
    qfim_cmd->add_option("--representation", representation,
                         "complex blocks or real 2k x 2k (default complex)");

    CLI::App *crb_cmd = app.add_subcommand("crb", "compute Cramer-Rao bounds");
    add_common(crb_cmd);
    add_model(crb_cmd);
    crb_cmd->add_option("--kind", kind, "symmetric or right (default symmetric)");
    crb_cmd->add_option("--weight", weight_text,
                        "diagonal weight W_z as \"re,im\"; adds weighted-error bounds");

    CLI::App *sim = app.add_subcommand("simulate", "Monte Carlo homodyne simulation");
    add_common(sim);
    add_model(sim);
    sim->add_option("--shots", shots, "number of shots (default 100000)");
    sim->add_option("--phases", phases_text, "per-mode quadrature phases, comma separated");
    sim->add_option("--variance", variance, "quadrature variance (default 0.25)");
    sim->add_option("--csv", csv_path, "export outcomes as CSV (shot,mode,outcome)");

    CLI::App *demo = app.add_subcommand("demo-coherent",
                                        "coherent-state communication walkthrough");
    add_common(demo);
    demo->add_option("--truncation", truncation, "Fock truncation (default 40)");
    demo->add_option("--z", z_text, "parameter value as \"re,im\"");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        RunConfig config;
        if (!config_path.empty()) {
            std::ifstream in(config_path);
            if (!in) {
                throw ConfigError("cannot open config file " + config_path);
            }
            Json j;
            try {
                in >> j;
            } catch (const nlohmann::json::exception &e) {
                throw ConfigError(std::string("config parse error: ") + e.what());
            }
            config = parse_config(j);
        }

        CLI::App *active = app.get_subcommands().front();
        const auto given = [&](const std::string &flag) {
            const CLI::Option *opt = active->get_option_no_throw(flag);
            return opt != nullptr && opt->count() > 0;
        };
        if (given("--model")) config.model.name = model_name;
        if (given("--z")) config.z = parse_complex_flag(z_text);
        if (given("--keys")) config.model.keys = parse_keys_flag(keys_text);
        if (given("--truncation")) config.model.truncation = truncation;
        if (given("--mixing-eps")) config.model.mixing_eps = mixing_eps;
        if (given("--fd-step")) config.fd.step = fd_step;
        if (given("--seed")) config.seed = seed;
        if (given("--out")) config.out_path = out_path;
        if (given("--kind")) config.kind = kind;
        if (given("--representation")) config.representation = representation;
        if (given("--trials")) config.trials = trials;
        if (given("--dims")) {
            config.dim_d = dims[0];
            config.dim_k = dims[1];
        }
        if (given("--shots")) config.shots = shots;
        if (given("--phases")) config.phases = parse_double_list(phases_text);
        if (given("--variance")) config.quadrature_variance = variance;
        if (given("--csv")) config.csv_path = csv_path;
        if (given("--weight")) config.weight = parse_complex_flag(weight_text);
        if (given("--inject-map-error")) config.inject_map_error = true;
        if (config.kind != "symmetric" && config.kind != "right") {
            throw ConfigError("kind must be \"symmetric\" or \"right\"");
        }
        if (config.representation != "complex" && config.representation != "real") {
            throw ConfigError("representation must be \"complex\" or \"real\"");
        }

        Report report;
        if (active == verify) {
            report = cmd_verify_map(config);
        } else if (active == qfim_cmd) {
            report = cmd_qfim(config);
        } else if (active == crb_cmd) {
            report = cmd_crb(config);
        } else if (active == sim) {
            report = cmd_simulate(config);
        } else {
            report = cmd_demo_coherent(config);
        }
        emit(report, config.out_path);
        return report.consistent ? kExitOk : kExitConsistency;
    } catch (const ConfigError &e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const InvalidArgumentError &e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const Error &e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    }
}

} // namespace cqest::cli
