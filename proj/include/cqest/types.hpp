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
 * Common scalar/matrix aliases used across the toolkit.
 */

#pragma once

#include <complex>

#include <Eigen/Dense>

namespace cqest {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

inline constexpr Complex kImag{0.0, 1.0};

/// True when every entry of `m` is finite (no NaN/Inf).
inline bool all_finite(const CMatrix &m) {
    return m.array().real().isFinite().all() && m.array().imag().isFinite().all();
}

inline bool all_finite(const CVector &v) {
    return v.array().real().isFinite().all() && v.array().imag().isFinite().all();
}

} // namespace cqest
