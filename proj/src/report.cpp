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

#include "cqest/report.hpp"

#include "cqest/errors.hpp"

namespace cqest {

Json complex_to_json(Complex value) {
    return Json::array({value.real(), value.imag()});
}

Complex json_to_complex(const Json &j) {
    if (!j.is_array() || j.size() != 2) {
        throw ConfigError("complex values must be two-element [re, im] arrays");
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

Json matrix_to_json(const CMatrix &m) {
    Json rows = Json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            row.push_back(complex_to_json(m(i, j)));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

CMatrix json_to_matrix(const Json &j) {
    if (!j.is_array() || j.empty()) {
        throw ConfigError("matrices must be non-empty nested arrays");
    }
    const Eigen::Index rows = static_cast<Eigen::Index>(j.size());
    const Eigen::Index cols = static_cast<Eigen::Index>(j[0].size());
    CMatrix m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        if (static_cast<Eigen::Index>(j[i].size()) != cols) {
            throw ConfigError("matrix rows must have equal length");
        }
        for (Eigen::Index c = 0; c < cols; ++c) {
            m(i, c) = json_to_complex(j[i][c]);
        }
    }
    return m;
}

Json real_matrix_to_json(const RMatrix &m) {
    Json rows = Json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            row.push_back(m(i, j));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

void Report::add_matrix(const std::string &name, const CMatrix &m) {
    matrices.emplace_back(name, m);
}

void Report::add_scalar(const std::string &name, double value) {
    scalars.emplace_back(name, value);
}

Json Report::to_json() const {
    Json j = Json::object();
    j["command"] = command;
    j["version"] = version;
    j["seed"] = seed;
    j["inputs"] = inputs;
    Json mats = Json::object();
    for (const auto &[name, m] : matrices) {
        mats[name] = matrix_to_json(m);
    }
    j["matrices"] = std::move(mats);
    Json scal = Json::object();
    for (const auto &[name, v] : scalars) {
        scal[name] = v;
    }
    j["scalars"] = std::move(scal);
    j["diagnostics"] = diagnostics;
    j["status"] = consistent ? "ok" : "consistency-failure";
    return j;
}

Report Report::from_json(const Json &j) {
    Report r;
    r.command = j.at("command").get<std::string>();
    r.version = j.at("version").get<std::string>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.inputs = j.at("inputs");
    for (const auto &[name, value] : j.at("matrices").items()) {
        r.matrices.emplace_back(name, json_to_matrix(value));
    }
    for (const auto &[name, value] : j.at("scalars").items()) {
        r.scalars.emplace_back(name, value.get<double>());
    }
    r.diagnostics = j.at("diagnostics");
    r.consistent = j.at("status").get<std::string>() == "ok";
    return r;
}

std::string Report::to_string() const {
    return to_json().dump(2) + "\n";
}

} // namespace cqest
