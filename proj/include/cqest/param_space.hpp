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
 * Parameter representations (theta, its real stacking, its conjugate
 * extension) and numerical Wirtinger differentiation of matrix-valued
 * functions of complex parameters.
 */

#pragma once

#include <functional>
#include <utility>

#include "cqest/types.hpp"

namespace cqest {

/// A point theta in C^k.
struct ParamPoint {
    CVector theta;

    Eigen::Index size() const { return theta.size(); }
};

/// Real stacking [Re theta; Im theta] in R^{2k}.
struct RealRep {
    RVector bar;
};

/// Conjugate extension [theta; theta^*] in C^{2k}. The second half must be
/// the entry-wise conjugate of the first.
struct ConjExt {
    CVector hat;
};

RealRep to_real_rep(const ParamPoint &p);
ConjExt to_conj_ext(const ParamPoint &p);
ParamPoint from_real_rep(const RealRep &r);

/// Applies M_{2k} to the conjugate extension; throws
/// ConjugateConsistencyError when the halves are not conjugates (residual
/// above 1e-12) or when the result has an imaginary residue.
RealRep real_from_conj(const ConjExt &c);

/// Central-difference configuration. The default step is cbrt(machine
/// epsilon) with relative scaling, the optimum for second-order stencils.
struct FdPolicy {
    double step = 6.055454452393343e-06; // cbrt(2^-52)
    enum class Scaling { Relative, Absolute } scaling = Scaling::Relative;

    double step_for(Complex coordinate) const;
};

/// A matrix-valued map of a complex parameter vector.
using MatrixFn = std::function<CMatrix(const CVector &)>;

/**
 * Wirtinger derivative pair (d/dtheta_j, d/dtheta_j^*) of `f` at `p` by
 * central differences: four evaluations per parameter (+-h along the real
 * axis, +-h along the imaginary axis), combined as
 * d_z = (d_x - i d_y)/2 and d_{z*} = (d_x + i d_y)/2.
 */
std::pair<CMatrix, CMatrix> wirtinger_derivs(const MatrixFn &f, const ParamPoint &p,
                                             Eigen::Index j, const FdPolicy &policy = {});

/// Vector-valued map of a complex parameter vector.
using VectorFn = std::function<CVector(const CVector &)>;

std::pair<CVector, CVector> wirtinger_derivs(const VectorFn &f, const ParamPoint &p,
                                             Eigen::Index j, const FdPolicy &policy = {});

/**
 * The 2m x 2k Wirtinger Jacobian of F: C^k -> C^m,
 * [[D_z F, D_{z*} F], [(D_{z*} F)^*, (D_z F)^*]]; the lower blocks are
 * conjugates of the upper ones by construction.
 */
CMatrix wirtinger_jacobian(const VectorFn &f, const ParamPoint &p,
                           const FdPolicy &policy = {});

/// Real Jacobian of the real representation of F, a 2m x 2k real matrix of
/// partials with respect to (Re theta, Im theta).
RMatrix real_jacobian(const VectorFn &f, const ParamPoint &p, const FdPolicy &policy = {});

} // namespace cqest
