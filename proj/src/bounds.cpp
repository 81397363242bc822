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

#include "cqest/bounds.hpp"

#include <cmath>

#include "cqest/complex_map.hpp"
#include "cqest/errors.hpp"

namespace cqest {

CMatrix WeightBlocks::assemble() const {
    const Eigen::Index k = w.rows();
    CMatrix full(2 * k, 2 * k);
    full.topLeftCorner(k, k) = w;
    full.topRightCorner(k, k) = x;
    full.bottomLeftCorner(k, k) = x.conjugate();
    full.bottomRightCorner(k, k) = w.conjugate();
    return full;
}

WeightBlocks weight_from_real(const RMatrix &w_real) {
    if (w_real.rows() != w_real.cols() || w_real.rows() % 2 != 0 || w_real.rows() == 0) {
        throw DimensionError("weight_from_real: input must be square with even size");
    }
    if ((w_real - w_real.transpose()).norm() > 1e-10 * std::max(1.0, w_real.norm())) {
        throw NotHermitianError("weight_from_real: input must be symmetric");
    }
    const Eigen::Index k = w_real.rows() / 2;
    const CMatrix mapped = 0.25 * to_complex(w_real.cast<Complex>());
    WeightBlocks blocks;
    blocks.w = mapped.topLeftCorner(k, k);
    blocks.x = mapped.topRightCorner(k, k);
    return blocks;
}

CMatrix SchurBlocks::assemble_inverse() const {
    const Eigen::Index k = e.rows();
    const CMatrix e_inv = e.inverse();
    const CMatrix e_star_inv = e_star.inverse();
    CMatrix full(2 * k, 2 * k);
    full.topLeftCorner(k, k) = e_inv;
    full.topRightCorner(k, k) = -f * e_star_inv;
    full.bottomLeftCorner(k, k) = -f_star * e_inv;
    full.bottomRightCorner(k, k) = e_star_inv;
    return full;
}

namespace {

CMatrix invert_block(const CMatrix &block, const NumericPolicy &policy, const char *name) {
    const double scale = std::max(fim_scale(block), 1e-300);
    const double threshold =
        policy.singular_fim_tol * std::pow(scale, static_cast<double>(block.rows()));
    if (std::abs(block.determinant()) <= threshold) {
        throw SingularMatrixError(std::string("schur_blocks: block ") + name +
                                  " is singular");
    }
    return block.inverse();
}

} // namespace

SchurBlocks schur_blocks(const QfimBlocks &q, const NumericPolicy &policy) {
    SchurBlocks out;
    out.kind = q.kind;
    if (q.kind == FimKind::Symmetric) {
        const CMatrix j_inv = invert_block(q.j, policy, "J");
        const CMatrix j_conj_inv = j_inv.conjugate();
        out.e = q.j - q.q * j_conj_inv * q.q.conjugate();
        out.f = j_inv * q.q;
        out.e_star = out.e.conjugate();
        out.f_star = out.f.conjugate();
    } else {
        const CMatrix j_inv = invert_block(q.j, policy, "J");
        const CMatrix j_star_inv = invert_block(q.j_star, policy, "J*");
        out.e = q.j - q.q * j_star_inv * q.q_star;
        out.e_star = q.j_star - q.q_star * j_inv * q.q;
        out.f = j_inv * q.q;
        out.f_star = j_star_inv * q.q_star;
    }
    // The Schur complements must themselves be invertible for the block form.
    invert_block(out.e, policy, "E");
    invert_block(out.e_star, policy, "E*");
    return out;
}

BoundReport crb_covariance(const QfimBlocks &q, const CMatrix &jacobian,
                           const NumericPolicy &policy) {
    const CMatrix fim = q.assemble();
    if (jacobian.cols() != fim.rows()) {
        throw DimensionError("crb_covariance: Jacobian width must match the FIM size");
    }
    BoundReport report;
    report.kind = BoundReport::Kind::Covariance;
    report.qfim_kind = q.kind;
    report.determinant = fim.determinant();
    const CMatrix fim_inv = invert_fim(fim, policy);
    report.bound = jacobian * fim_inv * jacobian.adjoint();
    report.rank = robust_inverse(report.bound, policy.rank_tol).rank;
    return report;
}

BoundReport crb_covariance(const QfimBlocks &q, const NumericPolicy &policy) {
    const Eigen::Index n = 2 * q.num_params();
    return crb_covariance(q, CMatrix::Identity(n, n), policy);
}

BoundReport crb_covariance_from_inverse(const CMatrix &fim_inverse, const CMatrix &jacobian,
                                        FimKind kind) {
    if (jacobian.cols() != fim_inverse.rows()) {
        throw DimensionError("crb_covariance_from_inverse: size mismatch");
    }
    BoundReport report;
    report.kind = BoundReport::Kind::Covariance;
    report.qfim_kind = kind;
    report.bound = jacobian * fim_inverse * jacobian.adjoint();
    report.rank = robust_inverse(report.bound, 1e-10).rank;
    return report;
}

double wmse_bound_symmetric(const WeightBlocks &w, const QfimBlocks &q,
                            const NumericPolicy &policy) {
    if (q.kind != FimKind::Symmetric) {
        throw InvalidArgumentError("wmse_bound_symmetric: symmetric blocks required");
    }
    const CMatrix fim = q.assemble();
    const CMatrix fim_inv = invert_fim(fim, policy);
    const double trace_form = (w.assemble() * fim_inv).trace().real();

    // Block corollary: w^S = 2 tr Re(W E^{-1} - X F^* E^{-1}), from the
    // Schur form of the inverse.
    const SchurBlocks schur = schur_blocks(q, policy);
    const CMatrix e_inv = schur.e.inverse();
    const double block_form =
        2.0 * (w.w * e_inv - w.x * schur.f.conjugate() * e_inv).trace().real();

    const double scale = std::max(1.0, std::abs(trace_form));
    if (std::abs(trace_form - block_form) > 1e-9 * scale) {
        throw NumericalError("wmse_bound_symmetric: trace and block forms disagree (" +
                             std::to_string(trace_form) + " vs " +
                             std::to_string(block_form) + ")");
    }
    return trace_form;
}

double wmse_bound_right(const WeightBlocks &w, const CMatrix &rqfim_inverse,
                        const NumericPolicy &policy) {
    const Eigen::Index n = rqfim_inverse.rows();
    if (n != rqfim_inverse.cols() || n % 2 != 0 || n != 2 * w.num_params()) {
        throw DimensionError("wmse_bound_right: inverse FIM must be 2k x 2k");
    }
    const CMatrix s = swap_halves(n / 2);
    const CMatrix conjugated = s * rqfim_inverse.conjugate() * s;
    const CMatrix weight = w.assemble();
    const double first = 0.5 * (weight * (rqfim_inverse + conjugated)).trace().real();
    const double second = 0.5 * trace_abs(weight * (rqfim_inverse - conjugated), policy);
    return first + second;
}

CMatrix attainability(const PureDerivs &derivs) {
    const Eigen::Index k = derivs.num_params();
    const CVector &psi = derivs.psi;
    CMatrix commutators(k, k);
    for (Eigen::Index j = 0; j < k; ++j) {
        for (Eigen::Index l = 0; l < k; ++l) {
            // <psi|[L_theta_j, L_theta*_l]|psi> with L = 2 d rho expanded in
            // derivative-ket inner products.
            const CVector &kj = derivs.d_theta[j];
            const CVector &mj = derivs.d_theta_star[j];
            const CVector &kl = derivs.d_theta[l];
            const CVector &ml = derivs.d_theta_star[l];
            commutators(j, l) = 4.0 * (psi.dot(kj) * kl.dot(psi) + mj.dot(ml) -
                                       psi.dot(ml) * mj.dot(psi) - kl.dot(kj));
        }
    }
    return commutators;
}

CMatrix attainability(const PureModel &model, const ParamPoint &p, const FdPolicy &fd) {
    return attainability(pure_derivatives(model, p, fd));
}

bool attainability_ok(const CMatrix &commutators, double scale, const NumericPolicy &policy) {
    return commutators.cwiseAbs().maxCoeff() <= policy.attainability_tol * std::max(1.0, scale);
}

PsdOrdering fim_dominance(const CMatrix &classical, const CMatrix &quantum, double tol,
                          const NumericPolicy &policy) {
    return psd_order(quantum, classical, tol, policy);
}

} // namespace cqest
