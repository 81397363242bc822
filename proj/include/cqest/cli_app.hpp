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

/**
 * @file
 * Command implementations behind the CLI: model-spec parsing, numeric-policy
 * configuration, command dispatch, and report emission.
 */

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cqest/measurement_sim.hpp"
#include "cqest/numeric_policy.hpp"
#include "cqest/param_space.hpp"
#include "cqest/report.hpp"
#include "cqest/state_models.hpp"

namespace cqest::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConsistency = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumerical = 3;

/// Builtin model selection plus its parameters.
struct ModelConfig {
    std::string name = "coherent-1mode";
    std::vector<std::pair<Complex, Complex>> keys; // per-mode (eps, eta); defaults per name
    Eigen::Index truncation = 40;
    double mixing_eps = 0.0;
};

/// Effective configuration of a single command run.
struct RunConfig {
    ModelConfig model;
    NumericPolicy policy;
    FdPolicy fd;
    double quadrature_variance = 0.25;
    Complex z{0.3, 0.0};
    std::string kind = "symmetric";          // symmetric | right
    std::string representation = "complex";  // complex | real
    std::uint64_t seed = 12345;
    int trials = 100;
    Eigen::Index dim_d = 2;
    Eigen::Index dim_k = 2;
    Eigen::Index shots = 100000;
    std::vector<double> phases; // defaults to (0, pi/2, ...) per mode
    std::optional<Complex> weight;
    std::string out_path;
    std::string csv_path;
    bool inject_map_error = false; // test hook for the failure path
};

/// Strict JSON config parsing; unknown fields are rejected with ConfigError.
RunConfig parse_config(const Json &j);

/// A constructed model: density form always available, pure form when the
/// underlying family is pure (coherent encoding without mixing).
struct BuiltModel {
    bool is_coherent = false;
    bool is_pure = false;
    CoherentKey keys;
    FockConfig fock;
    PureModel pure;
    DensityModel density;
};

BuiltModel build_model(const ModelConfig &config);

Report cmd_verify_map(const RunConfig &config);
Report cmd_qfim(const RunConfig &config);
Report cmd_crb(const RunConfig &config);
Report cmd_simulate(const RunConfig &config);
Report cmd_demo_coherent(const RunConfig &config);

/// Full CLI: parses flags, merges the optional --config file, dispatches,
/// writes the report (stdout or --out), and returns the process exit code.
int run_cli(int argc, const char *const *argv);

} // namespace cqest::cli
