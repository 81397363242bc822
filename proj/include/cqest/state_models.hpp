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
 * Parametrized quantum-state families: generic density/pure models with
 * optional analytic Wirtinger derivatives, truncated Fock-space machinery,
 * and the coherent-state encoding models used by the communication demo.
 */

#pragma once

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "cqest/param_space.hpp"
#include "cqest/types.hpp"

namespace cqest {

/// Differentiable map from a complex parameter vector to a density matrix.
/// `analytic_derivs(theta, j)` returns (d_theta_j rho, d_theta_j^* rho) and
/// may be empty, in which case callers fall back to finite differences.
struct DensityModel {
    Eigen::Index dim = 0;
    Eigen::Index num_params = 0;
    std::function<CMatrix(const CVector &)> evaluate;
    std::function<std::pair<CMatrix, CMatrix>(const CVector &, Eigen::Index)> analytic_derivs;
};

/// Pure-state counterpart; evaluation must return unit-norm vectors.
struct PureModel {
    Eigen::Index dim = 0;
    Eigen::Index num_params = 0;
    std::function<CVector(const CVector &)> evaluate;
    std::function<std::pair<CVector, CVector>(const CVector &, Eigen::Index)> analytic_derivs;
};

/// Hermiticity / trace / positivity diagnostics for a density matrix.
struct DensityCheck {
    double hermiticity_residual = 0.0;
    double trace_deviation = 0.0;
    double lambda_min = 0.0;

    bool passes(double tol = 1e-10) const {
        return hermiticity_residual <= tol && trace_deviation <= tol && lambda_min >= -tol;
    }
};

DensityCheck check_density(const CMatrix &rho);

/// Wraps a pure model as a rank-one density model (derivatives by product rule).
DensityModel to_density_model(const PureModel &model);

/// Fock-space truncation: levels 0 .. truncation-1.
struct FockConfig {
    Eigen::Index truncation = 40;
};

/// Annihilation/creation pair in the truncated number basis.
std::pair<CMatrix, CMatrix> ladder_ops(const FockConfig &cfg);

/// True when the coherent amplitude fits the truncation with headroom:
/// mean photon number plus five standard deviations below the cutoff.
bool truncation_adequate(Complex alpha, const FockConfig &cfg);

/// Displacement operator exp(alpha a^dagger - alpha^* a), matrix exponential
/// by scaling-and-squaring.
CMatrix displacement(Complex alpha, const FockConfig &cfg);

/// Coherent state D(alpha)|0>.
CVector coherent_state(Complex alpha, const FockConfig &cfg);

/// Per-mode key pair (epsilon_m, eta_m) for the encoding
/// alpha_m = epsilon_m z + eta_m z^*.
struct CoherentKey {
    std::vector<std::pair<Complex, Complex>> modes;

    Eigen::Index num_modes() const { return static_cast<Eigen::Index>(modes.size()); }
};

/**
 * Pure model |alpha_1> x ... x |alpha_M> of the single complex parameter z,
 * with exact Wirtinger derivatives
 *   d_z |alpha>    = D(alpha) (eps a^dag - (alpha eta^* - alpha^* eps)/2) |0>,
 *   d_{z*}|alpha>  = D(alpha) (eta a^dag - (alpha eps^* - alpha^* eta)/2) |0>,
 * extended over modes by the product rule.
 */
PureModel coherent_model(const CoherentKey &keys, const FockConfig &cfg);

/// (1-eps)|psi><psi| + eps I/d; throws InvalidArgumentError unless 0 < eps < 1.
CMatrix epsilon_mix(const CVector &psi, double eps);

/// Full-rank regularization of a pure model with the mixing weight above;
/// derivatives are the (1-eps)-scaled pure-state derivatives.
DensityModel epsilon_mix_model(const PureModel &model, double eps);

/// Smooth Bloch-vector map r(theta) for a one-parameter qubit family
/// rho = (I + r . sigma)/2 with r = r0 + linear (a, b) + quadratic (a^2, b^2, ab),
/// where theta = a + i b.
struct QubitSpec {
    Eigen::Vector3d r0 = Eigen::Vector3d::Zero();
    Eigen::Matrix<double, 3, 2> linear = Eigen::Matrix<double, 3, 2>::Zero();
    Eigen::Matrix<double, 3, 3> quadratic = Eigen::Matrix<double, 3, 3>::Zero();

    Eigen::Vector3d bloch(Complex theta) const;
};

/// Throws InvalidArgumentError at evaluation when ||r(theta)|| >= 1.
DensityModel builtin_qubit_model(const QubitSpec &spec);

/// Fixed, well-conditioned instance used by the CLI's qubit-test model.
QubitSpec default_qubit_spec();

/// Randomized qubit family for equivalence sweeps; full rank near theta = 0.
QubitSpec random_qubit_spec(std::uint64_t seed);

/// Random smooth full-rank family rho = (B B^dag + delta I)/norm on C^dim
/// with B affine-plus-cross in (Re theta_j, Im theta_j).
DensityModel random_full_rank_model(Eigen::Index dim, Eigen::Index num_params,
                                    std::uint64_t seed);

/// Random one-parameter pure qubit family (normalized two-vector, generically
/// non-holomorphic in theta).
PureModel random_pure_qubit_model(std::uint64_t seed);

} // namespace cqest
