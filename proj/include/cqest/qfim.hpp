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
 * Logarithmic-derivative solvers and assembly of the four quantum Fisher
 * information objects (real/complex x symmetric/right), plus pure-state
 * fast paths and the K matrices entering the right-derivative bound.
 */

#pragma once

#include <string>
#include <vector>

#include "cqest/numeric_policy.hpp"
#include "cqest/param_space.hpp"
#include "cqest/state_models.hpp"
#include "cqest/types.hpp"

namespace cqest {

enum class FimKind { Symmetric, Right };

/// Solution of the symmetric logarithmic-derivative equation
/// drho = (rho L + L rho)/2, solved on the support of rho.
struct SldResult {
    CMatrix matrix;
    double residual = 0.0;
    bool kernel_projected = false;
};

/// Solution of the right logarithmic-derivative equation drho = rho L.
struct RldResult {
    CMatrix matrix;
    double residual = 0.0;
};

/**
 * Symmetric logarithmic derivative in the eigenbasis of rho:
 * L_ij = 2 (drho)_ij / (p_i + p_j), entries with p_i + p_j below the kernel
 * cutoff are zeroed (support projection). drho need not be Hermitian; for
 * Wirtinger inputs the solution is the corresponding non-Hermitian solve.
 */
SldResult solve_sld(const CMatrix &rho, const CMatrix &drho, const NumericPolicy &policy = {});

/// Right logarithmic derivative L = rho^{-1} drho. Throws RankDeficientError
/// when lambda_min(rho) falls below the rank gate; low-rank states have no RLD.
RldResult solve_rld(const CMatrix &rho, const CMatrix &drho, const NumericPolicy &policy = {});

/// Wirtinger derivative bundle of a density model at a point: rho together
/// with (d_theta_j rho, d_theta_j^* rho) for every parameter. Analytic
/// derivatives are used when the model provides them, otherwise central
/// differences.
struct DensityDerivs {
    CMatrix rho;
    std::vector<CMatrix> d_theta;
    std::vector<CMatrix> d_theta_star;

    Eigen::Index num_params() const { return static_cast<Eigen::Index>(d_theta.size()); }
};

DensityDerivs density_derivatives(const DensityModel &model, const ParamPoint &p,
                                  const FdPolicy &fd = {});

/// Pure-state counterpart: psi with ket derivatives.
struct PureDerivs {
    CVector psi;
    std::vector<CVector> d_theta;
    std::vector<CVector> d_theta_star;

    Eigen::Index num_params() const { return static_cast<Eigen::Index>(d_theta.size()); }
};

PureDerivs pure_derivatives(const PureModel &model, const ParamPoint &p,
                            const FdPolicy &fd = {});

/// A labeled logarithmic derivative, for reports and property checks.
struct LogDerivative {
    FimKind kind = FimKind::Symmetric;
    std::string with_respect_to;
    CMatrix matrix;
    double residual = 0.0;
    bool kernel_projected = false;
};

/// Complex logarithmic derivatives for every theta_j and theta_j^*, labeled.
std::vector<LogDerivative> log_derivatives(const DensityDerivs &derivs, FimKind kind,
                                           const NumericPolicy &policy = {});

/**
 * Block pair of a 2k x 2k complex-parameter Fisher matrix. For the
 * symmetric kind the lower blocks are the conjugates of the upper ones; the
 * right kind carries independent lower blocks (the right logarithmic
 * derivatives of theta and theta^* are not adjoint to each other).
 */
struct QfimBlocks {
    FimKind kind = FimKind::Symmetric;
    CMatrix j;
    CMatrix q;
    CMatrix j_star; // Right kind only; Symmetric uses conj(j).
    CMatrix q_star; // Right kind only; Symmetric uses conj(q).

    Eigen::Index num_params() const { return j.rows(); }
    CMatrix assemble() const;
};

/// K-matrix blocks; the full assembly [[K, R], [R^*, K^*]] is anti-Hermitian
/// (its real-parameter counterpart is a real antisymmetric matrix).
struct KBlocks {
    CMatrix k;
    CMatrix r;

    CMatrix assemble() const;
};

/// Real-parameter symmetric QFIM, a real symmetric PSD 2k x 2k matrix over
/// the stacked parameters (Re theta, Im theta).
CMatrix sqfim_real(const DensityDerivs &derivs, const NumericPolicy &policy = {});
CMatrix sqfim_real(const DensityModel &model, const ParamPoint &p,
                   const NumericPolicy &policy = {}, const FdPolicy &fd = {});

/// Real-parameter right QFIM, Hermitian (not necessarily real).
CMatrix rqfim_real(const DensityDerivs &derivs, const NumericPolicy &policy = {});
CMatrix rqfim_real(const DensityModel &model, const ParamPoint &p,
                   const NumericPolicy &policy = {}, const FdPolicy &fd = {});

/// Complex-parameter symmetric QFIM blocks from complex SLDs.
QfimBlocks sqfim_complex(const DensityDerivs &derivs, const NumericPolicy &policy = {});
QfimBlocks sqfim_complex(const DensityModel &model, const ParamPoint &p,
                         const NumericPolicy &policy = {}, const FdPolicy &fd = {});

/// Complex-parameter right QFIM blocks from complex RLDs.
QfimBlocks rqfim_complex(const DensityDerivs &derivs, const NumericPolicy &policy = {});
QfimBlocks rqfim_complex(const DensityModel &model, const ParamPoint &p,
                         const NumericPolicy &policy = {}, const FdPolicy &fd = {});

/// Pure-state symmetric QFIM blocks from projected derivative overlaps.
QfimBlocks sqfim_pure_complex(const PureDerivs &derivs);
QfimBlocks sqfim_pure_complex(const PureModel &model, const ParamPoint &p,
                              const FdPolicy &fd = {});

/// Pure-state real-parameter symmetric QFIM (projected real-derivative overlaps).
CMatrix sqfim_real_pure(const PureDerivs &derivs);

/// Pure-state K blocks of the right-derivative inverse.
KBlocks k_blocks_pure(const PureDerivs &derivs);
KBlocks k_blocks_pure(const PureModel &model, const ParamPoint &p, const FdPolicy &fd = {});

/// Real-parameter K matrix (antisymmetric), the map preimage of the K blocks.
CMatrix k_real_pure(const PureDerivs &derivs);

/**
 * Pure-state limit of the inverse right QFIM:
 * (J^R)^{-1} = (J^S)^{-1} + i (J^S)^{-1} K (J^S)^{-1}.
 * Throws SingularMatrixError when det(J^S) falls below the singular gate.
 */
CMatrix rqfim_inv_pure(const PureDerivs &derivs, const NumericPolicy &policy = {});
CMatrix rqfim_inv_pure(const PureModel &model, const ParamPoint &p,
                       const NumericPolicy &policy = {}, const FdPolicy &fd = {});

/**
 * Second-order finite-difference Hessian of the fidelity overlap
 * |<psi(p)|psi(p')>|^2 in the stacked real parameters, scaled by -2 and
 * transported to conjugate-extension coordinates. Matches the pure-state
 * symmetric QFIM within the Hessian stencil tolerance.
 */
CMatrix fubini_study_hessian(const PureModel &model, const ParamPoint &p,
                             double step = 1.2207031e-04);

/// Characteristic scale of a Fisher matrix (Frobenius norm over sqrt(n)).
double fim_scale(const CMatrix &fim);

/// Inverse with the singular-FIM gate: refuses when |det| is below
/// policy.singular_fim_tol * scale^n, reporting the determinant.
CMatrix invert_fim(const CMatrix &fim, const NumericPolicy &policy = {});

} // namespace cqest
