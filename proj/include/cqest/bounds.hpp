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
 * Cramer-Rao covariance bounds (full and block/Schur forms), weighted
 * mean-square-error bounds for both derivative families, weighting-matrix
 * conversion, the pure-state attainability condition, and Fisher-matrix
 * dominance checks.
 */

#pragma once

#include <optional>
#include <string>

#include "cqest/linalg.hpp"
#include "cqest/numeric_policy.hpp"
#include "cqest/qfim.hpp"
#include "cqest/types.hpp"

namespace cqest {

/// Weighting blocks of the conjugate-extension weighting matrix
/// [[W, X], [X^*, W^*]]; Hermitian iff W is Hermitian and X symmetric.
struct WeightBlocks {
    CMatrix w;
    CMatrix x;

    Eigen::Index num_params() const { return w.rows(); }
    CMatrix assemble() const;
};

/// Converts a real symmetric 2k x 2k weighting matrix to conjugate-extension
/// blocks via a quarter of the structured map. Throws NotHermitianError when
/// the input is not symmetric.
WeightBlocks weight_from_real(const RMatrix &w_real);

/**
 * Schur-complement blocks of an inverse 2k x 2k Fisher matrix. E is the
 * Schur complement of the lower-right block, F the coupling factor J^{-1} Q;
 * the right kind carries the independent starred pair as well. Assembling
 * [[E^{-1}, -F E_*^{-1}], [-F_* E^{-1}, E_*^{-1}]] reproduces the direct
 * inverse of the full matrix.
 */
struct SchurBlocks {
    FimKind kind = FimKind::Symmetric;
    CMatrix e;
    CMatrix f;
    CMatrix e_star; // Symmetric kind: conj(e).
    CMatrix f_star; // Symmetric kind: conj(f).

    CMatrix assemble_inverse() const;
};

/// Throws SingularMatrixError naming the offending sub-block.
SchurBlocks schur_blocks(const QfimBlocks &q, const NumericPolicy &policy = {});

/// A computed bound with its diagnostics.
struct BoundReport {
    enum class Kind { Covariance, Wmse } kind = Kind::Covariance;
    FimKind qfim_kind = FimKind::Symmetric;
    CMatrix bound;                    // covariance bound matrix (2d x 2d)
    double scalar = 0.0;              // weighted-MSE value when kind == Wmse
    Complex determinant{0.0, 0.0};    // determinant of the underlying FIM
    Eigen::Index rank = 0;            // rank of the bound matrix
    std::optional<CMatrix> attainability_commutators;
    std::string notes;
};

/**
 * Covariance bound D (J)^{-1} D^dagger for the conjugate extension of the
 * statistic g, with D its Wirtinger Jacobian (identity when estimating theta
 * itself). Throws SingularMatrixError (with determinant diagnostic) when the
 * FIM fails the singular gate.
 */
BoundReport crb_covariance(const QfimBlocks &q, const CMatrix &jacobian,
                           const NumericPolicy &policy = {});

/// Identity-statistic convenience overload.
BoundReport crb_covariance(const QfimBlocks &q, const NumericPolicy &policy = {});

/// Covariance bound from a precomputed inverse FIM (pure-state right path).
BoundReport crb_covariance_from_inverse(const CMatrix &fim_inverse, const CMatrix &jacobian,
                                        FimKind kind);

/**
 * Symmetric weighted-MSE bound tr(W (J^S)^{-1}). Both the trace form and the
 * block/Schur corollary form are computed; they must agree within the stated
 * tolerance or NumericalError is thrown.
 */
double wmse_bound_symmetric(const WeightBlocks &w, const QfimBlocks &q,
                            const NumericPolicy &policy = {});

/**
 * Right weighted-MSE bound from a full 2k x 2k inverse right FIM:
 * (1/2) tr(W [R + S R^* S]) + (1/2) trAbs(W [R - S R^* S]) with S the block
 * swap. Works for both the full-rank inverse and the pure-state limit.
 */
double wmse_bound_right(const WeightBlocks &w, const CMatrix &rqfim_inverse,
                        const NumericPolicy &policy = {});

/**
 * Pure-state attainability matrix: entries <psi|[L_{theta_j}, L_{theta*_k}]|psi>
 * for the canonical pure-state symmetric logarithmic derivatives
 * L = 2 d rho. The symmetric CRB is attainable iff the matrix vanishes.
 */
CMatrix attainability(const PureDerivs &derivs);
CMatrix attainability(const PureModel &model, const ParamPoint &p, const FdPolicy &fd = {});

/// True when every commutator expectation is below tol * scale.
bool attainability_ok(const CMatrix &commutators, double scale,
                      const NumericPolicy &policy = {});

/// Fisher-matrix dominance: classical <= quantum in the PSD order.
PsdOrdering fim_dominance(const CMatrix &classical, const CMatrix &quantum, double tol,
                          const NumericPolicy &policy = {});

} // namespace cqest
