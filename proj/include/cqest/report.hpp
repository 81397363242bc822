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
 * Machine-readable run reports. Complex numbers serialize as two-element
 * [re, im] arrays and matrices as row-major nested arrays, so reports are
 * lossless and language-neutral.
 */

#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "cqest/types.hpp"

namespace cqest {

using Json = nlohmann::ordered_json;

Json complex_to_json(Complex value);
Complex json_to_complex(const Json &j);

Json matrix_to_json(const CMatrix &m);
CMatrix json_to_matrix(const Json &j);

Json real_matrix_to_json(const RMatrix &m);

/// A command's machine-readable output. Key order is fixed so that seeded
/// runs serialize byte-identically.
struct Report {
    std::string command;
    std::string version;
    std::uint64_t seed = 0;
    Json inputs = Json::object();
    std::vector<std::pair<std::string, CMatrix>> matrices;
    std::vector<std::pair<std::string, double>> scalars;
    Json diagnostics = Json::object();
    bool consistent = true;

    void add_matrix(const std::string &name, const CMatrix &m);
    void add_scalar(const std::string &name, double value);

    Json to_json() const;
    static Report from_json(const Json &j);

    /// Serialized with a trailing newline, two-space indentation.
    std::string to_string() const;
};

} // namespace cqest
