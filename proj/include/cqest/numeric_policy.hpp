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

#pragma once

namespace cqest {

/**
 * Numeric tolerances shared by every module. A single record is threaded
 * through the pipeline so that CLI flags / config files can adjust all
 * gates in one place.
 */
struct NumericPolicy {
    /// Relative reconstruction tolerance for eigendecompositions.
    double decomposition_tol = 1e-10;
    /// Eigenvector condition number above which a matrix counts as defective.
    double defect_threshold = 1e8;
    /// Relative Frobenius tolerance for Hermiticity checks.
    double hermiticity_tol = 1e-10;
    /// Relative rank cutoff for pseudo-inverses.
    double rank_tol = 1e-12;
    /// Support cutoff for the SLD solve: p_i + p_j <= sld_kernel_tol * tr(rho)
    /// zeroes the entry.
    double sld_kernel_tol = 1e-12;
    /// Minimum eigenvalue of rho below which the RLD is refused.
    double rld_rank_gate = 1e-10;
    /// |det| below singular_fim_tol * scale^n refuses FIM inversion.
    double singular_fim_tol = 1e-10;
    /// Commutator expectations below attainability_tol * (FIM scale) count as
    /// zero.
    double attainability_tol = 1e-8;
    /// PSD-ordering slack: holds iff lambda_min(A - B) >= -psd_tol.
    double psd_tol = 1e-10;
};

} // namespace cqest
