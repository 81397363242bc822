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
 * Dense complex matrix primitives: eigendecomposition, spectral matrix
 * functions, the matrix absolute value, Hermitian ordering tests, and
 * rank-tolerant inversion.
 */

#pragma once

#include <functional>

#include "cqest/numeric_policy.hpp"
#include "cqest/types.hpp"

namespace cqest {

/**
 * Diagonalization G = V diag(values) V^{-1}. `condition` is the 2-norm
 * condition number of the eigenvector matrix V; it gates spectral matrix
 * functions, which are only defined for diagonalizable inputs.
 */
struct EigDecomposition {
    CVector values;
    CMatrix vectors;
    double condition = 1.0;
};

/// True when ||G - G^dagger||_F <= tol * max(1, ||G||_F).
bool is_hermitian(const CMatrix &g, double tol);

/// Frobenius-relative distance between two matrices (denominator clamped at 1).
double relative_residual(const CMatrix &actual, const CMatrix &reference);

/**
 * Eigendecomposition of a square matrix. Hermitian inputs (within the policy
 * tolerance) are symmetrized and solved with the self-adjoint path, which
 * returns unitary eigenvectors.
 *
 * Throws DimensionError for non-square input, NumericalError when the
 * general solver fails to converge.
 */
EigDecomposition eig(const CMatrix &g, const NumericPolicy &policy = {});

/**
 * Spectral function f(G) = V f(Lambda) V^{-1}, defined on the spectrum of a
 * diagonalizable G. Throws DefectiveMatrixError when the eigenvector
 * condition number exceeds policy.defect_threshold.
 */
CMatrix matrix_function(const CMatrix &g, const std::function<Complex(Complex)> &f,
                        const NumericPolicy &policy = {});

/// Matrix absolute value: eigenvalues replaced by their moduli.
CMatrix matrix_abs(const CMatrix &g, const NumericPolicy &policy = {});

/// Sum of the moduli of the eigenvalues, i.e. tr(Abs(G)) without the basis round trip.
double trace_abs(const CMatrix &g, const NumericPolicy &policy = {});

/// Outcome of a positive-semidefinite ordering test A >= B.
struct PsdOrdering {
    bool holds = false;
    double lambda_min = 0.0;
};

/**
 * Tests A >= B in the PSD order: holds iff the minimum eigenvalue of the
 * Hermitian part of A - B is >= -tol. Both inputs must be Hermitian to the
 * policy tolerance and of equal size.
 */
PsdOrdering psd_order(const CMatrix &a, const CMatrix &b, double tol,
                      const NumericPolicy &policy = {});

/// Rank-tolerant inverse. Full-rank inputs get the exact inverse; otherwise
/// the Moore-Penrose pseudo-inverse with a rank report.
struct InverseResult {
    CMatrix inverse;
    Eigen::Index rank = 0;
    bool full_rank = false;
    double smallest_singular_value = 0.0;
};

InverseResult robust_inverse(const CMatrix &g, double rank_tol = 1e-12);

} // namespace cqest
