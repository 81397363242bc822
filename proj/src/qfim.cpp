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

#include "cqest/qfim.hpp"

#include <cmath>

#include "cqest/complex_map.hpp"
#include "cqest/errors.hpp"
#include "cqest/linalg.hpp"

namespace cqest {

SldResult solve_sld(const CMatrix &rho, const CMatrix &drho, const NumericPolicy &policy) {
    if (rho.rows() != rho.cols() || rho.rows() != drho.rows() || rho.cols() != drho.cols()) {
        throw DimensionError("solve_sld: rho and drho must be square and equal-sized");
    }
    if (!is_hermitian(rho, policy.hermiticity_tol)) {
        throw NotHermitianError("solve_sld: rho must be Hermitian");
    }
    const CMatrix sym = 0.5 * (rho + rho.adjoint());
    Eigen::SelfAdjointEigenSolver<CMatrix> es(sym);
    if (es.info() != Eigen::Success) {
        throw NumericalError("solve_sld: eigendecomposition failed");
    }
    const RVector p = es.eigenvalues();
    const CMatrix &v = es.eigenvectors();
    const double cutoff = policy.sld_kernel_tol * std::abs(sym.trace());

    CMatrix tilde = v.adjoint() * drho * v;
    SldResult out;
    for (Eigen::Index i = 0; i < p.size(); ++i) {
        for (Eigen::Index j = 0; j < p.size(); ++j) {
            const double denom = p(i) + p(j);
            if (denom > cutoff) {
                tilde(i, j) *= 2.0 / denom;
            } else {
                tilde(i, j) = 0.0;
                out.kernel_projected = true;
            }
        }
    }
    out.matrix = v * tilde * v.adjoint();
    out.residual = (drho - 0.5 * (sym * out.matrix + out.matrix * sym)).norm();
    return out;
}

RldResult solve_rld(const CMatrix &rho, const CMatrix &drho, const NumericPolicy &policy) {
    if (rho.rows() != rho.cols() || rho.rows() != drho.rows() || rho.cols() != drho.cols()) {
        throw DimensionError("solve_rld: rho and drho must be square and equal-sized");
    }
    if (!is_hermitian(rho, policy.hermiticity_tol)) {
        throw NotHermitianError("solve_rld: rho must be Hermitian");
    }
    const CMatrix sym = 0.5 * (rho + rho.adjoint());
    Eigen::SelfAdjointEigenSolver<CMatrix> es(sym, Eigen::EigenvaluesOnly);
    if (es.eigenvalues()(0) <= policy.rld_rank_gate) {
        throw RankDeficientError(
            "solve_rld: state is rank deficient (lambda_min = " +
            std::to_string(es.eigenvalues()(0)) + "); the right derivative is undefined");
    }
    RldResult out;
    out.matrix = sym.partialPivLu().solve(drho);
    out.residual = (drho - sym * out.matrix).norm();
    return out;
}

DensityDerivs density_derivatives(const DensityModel &model, const ParamPoint &p,
                                  const FdPolicy &fd) {
    if (p.size() != model.num_params) {
        throw InvalidArgumentError("density_derivatives: parameter count mismatch");
    }
    DensityDerivs out;
    out.rho = model.evaluate(p.theta);
    for (Eigen::Index j = 0; j < model.num_params; ++j) {
        if (model.analytic_derivs) {
            auto [dz, dzs] = model.analytic_derivs(p.theta, j);
            out.d_theta.push_back(std::move(dz));
            out.d_theta_star.push_back(std::move(dzs));
        } else {
            auto [dz, dzs] = wirtinger_derivs(MatrixFn(model.evaluate), p, j, fd);
            out.d_theta.push_back(std::move(dz));
            out.d_theta_star.push_back(std::move(dzs));
        }
    }
    return out;
}

PureDerivs pure_derivatives(const PureModel &model, const ParamPoint &p, const FdPolicy &fd) {
    if (p.size() != model.num_params) {
        throw InvalidArgumentError("pure_derivatives: parameter count mismatch");
    }
    PureDerivs out;
    out.psi = model.evaluate(p.theta);
    for (Eigen::Index j = 0; j < model.num_params; ++j) {
        if (model.analytic_derivs) {
            auto [dz, dzs] = model.analytic_derivs(p.theta, j);
            out.d_theta.push_back(std::move(dz));
            out.d_theta_star.push_back(std::move(dzs));
        } else {
            auto [dz, dzs] = wirtinger_derivs(VectorFn(model.evaluate), p, j, fd);
            out.d_theta.push_back(std::move(dz));
            out.d_theta_star.push_back(std::move(dzs));
        }
    }
    return out;
}

std::vector<LogDerivative> log_derivatives(const DensityDerivs &derivs, FimKind kind,
                                           const NumericPolicy &policy) {
    std::vector<LogDerivative> out;
    const Eigen::Index k = derivs.num_params();
    for (Eigen::Index j = 0; j < 2 * k; ++j) {
        const bool starred = j >= k;
        const Eigen::Index idx = starred ? j - k : j;
        const CMatrix &drho = starred ? derivs.d_theta_star[idx] : derivs.d_theta[idx];
        LogDerivative entry;
        entry.kind = kind;
        entry.with_respect_to =
            (starred ? "theta*_" : "theta_") + std::to_string(idx + 1);
        if (kind == FimKind::Symmetric) {
            SldResult sld = solve_sld(derivs.rho, drho, policy);
            entry.matrix = std::move(sld.matrix);
            entry.residual = sld.residual;
            entry.kernel_projected = sld.kernel_projected;
        } else {
            RldResult rld = solve_rld(derivs.rho, drho, policy);
            entry.matrix = std::move(rld.matrix);
            entry.residual = rld.residual;
        }
        out.push_back(std::move(entry));
    }
    return out;
}

CMatrix QfimBlocks::assemble() const {
    const Eigen::Index k = j.rows();
    CMatrix full(2 * k, 2 * k);
    full.topLeftCorner(k, k) = j;
    full.topRightCorner(k, k) = q;
    if (kind == FimKind::Symmetric) {
        full.bottomLeftCorner(k, k) = q.conjugate();
        full.bottomRightCorner(k, k) = j.conjugate();
    } else {
        full.bottomLeftCorner(k, k) = q_star;
        full.bottomRightCorner(k, k) = j_star;
    }
    return full;
}

CMatrix KBlocks::assemble() const {
    const Eigen::Index n = k.rows();
    CMatrix full(2 * n, 2 * n);
    full.topLeftCorner(n, n) = k;
    full.topRightCorner(n, n) = r;
    full.bottomLeftCorner(n, n) = r.conjugate();
    full.bottomRightCorner(n, n) = k.conjugate();
    return full;
}

namespace {

void require_full_rank(const CMatrix &rho, const NumericPolicy &policy, const char *who) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (rho + rho.adjoint()),
                                              Eigen::EigenvaluesOnly);
    if (es.eigenvalues()(0) <= policy.rld_rank_gate) {
        throw RankDeficientError(std::string(who) +
                                 ": model is rank deficient at this point; use the "
                                 "pure-state path");
    }
}

// Real-parameter derivative list (d/dRe theta_j stacked before d/dIm theta_j)
// assembled from the Wirtinger pair.
std::vector<CMatrix> real_param_derivs(const DensityDerivs &derivs) {
    const Eigen::Index k = derivs.num_params();
    std::vector<CMatrix> out(2 * k);
    for (Eigen::Index j = 0; j < k; ++j) {
        out[j] = derivs.d_theta[j] + derivs.d_theta_star[j];
        out[k + j] = kImag * (derivs.d_theta[j] - derivs.d_theta_star[j]);
    }
    return out;
}

} // namespace

CMatrix sqfim_real(const DensityDerivs &derivs, const NumericPolicy &policy) {
    require_full_rank(derivs.rho, policy, "sqfim_real");
    const auto d_real = real_param_derivs(derivs);
    const Eigen::Index n = static_cast<Eigen::Index>(d_real.size());
    std::vector<CMatrix> slds(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        slds[i] = solve_sld(derivs.rho, d_real[i], policy).matrix;
    }
    CMatrix fim(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            const Complex t = (derivs.rho * slds[i] * slds[j]).trace();
            const Complex u = (derivs.rho * slds[j] * slds[i]).trace();
            fim(i, j) = 0.5 * (t + u);
        }
    }
    return fim;
}

CMatrix rqfim_real(const DensityDerivs &derivs, const NumericPolicy &policy) {
    require_full_rank(derivs.rho, policy, "rqfim_real");
    const auto d_real = real_param_derivs(derivs);
    const Eigen::Index n = static_cast<Eigen::Index>(d_real.size());
    std::vector<CMatrix> rlds(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        rlds[i] = solve_rld(derivs.rho, d_real[i], policy).matrix;
    }
    CMatrix fim(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            fim(i, j) = (derivs.rho * rlds[j] * rlds[i].adjoint()).trace();
        }
    }
    return fim;
}

QfimBlocks sqfim_complex(const DensityDerivs &derivs, const NumericPolicy &policy) {
    require_full_rank(derivs.rho, policy, "sqfim_complex");
    const Eigen::Index k = derivs.num_params();
    std::vector<CMatrix> l_theta(k), l_theta_star(k);
    for (Eigen::Index j = 0; j < k; ++j) {
        l_theta[j] = solve_sld(derivs.rho, derivs.d_theta[j], policy).matrix;
        l_theta_star[j] = solve_sld(derivs.rho, derivs.d_theta_star[j], policy).matrix;
    }
    QfimBlocks blocks;
    blocks.kind = FimKind::Symmetric;
    blocks.j.resize(k, k);
    blocks.q.resize(k, k);
    for (Eigen::Index i = 0; i < k; ++i) {
        for (Eigen::Index j = 0; j < k; ++j) {
            blocks.j(i, j) = 0.5 * ((derivs.rho * l_theta_star[i] * l_theta[j]).trace() +
                                    (derivs.rho * l_theta[j] * l_theta_star[i]).trace());
            blocks.q(i, j) = 0.5 * ((derivs.rho * l_theta_star[i] * l_theta_star[j]).trace() +
                                    (derivs.rho * l_theta_star[j] * l_theta_star[i]).trace());
        }
    }
    return blocks;
}

QfimBlocks rqfim_complex(const DensityDerivs &derivs, const NumericPolicy &policy) {
    require_full_rank(derivs.rho, policy, "rqfim_complex");
    const Eigen::Index k = derivs.num_params();
    std::vector<CMatrix> l_theta(k), l_theta_star(k);
    for (Eigen::Index j = 0; j < k; ++j) {
        l_theta[j] = solve_rld(derivs.rho, derivs.d_theta[j], policy).matrix;
        l_theta_star[j] = solve_rld(derivs.rho, derivs.d_theta_star[j], policy).matrix;
    }
    QfimBlocks blocks;
    blocks.kind = FimKind::Right;
    blocks.j.resize(k, k);
    blocks.q.resize(k, k);
    blocks.j_star.resize(k, k);
    blocks.q_star.resize(k, k);
    for (Eigen::Index i = 0; i < k; ++i) {
        for (Eigen::Index j = 0; j < k; ++j) {
            blocks.j(i, j) = (derivs.rho * l_theta[j] * l_theta[i].adjoint()).trace();
            blocks.q(i, j) = (derivs.rho * l_theta_star[j] * l_theta[i].adjoint()).trace();
            blocks.q_star(i, j) = (derivs.rho * l_theta[j] * l_theta_star[i].adjoint()).trace();
            blocks.j_star(i, j) =
                (derivs.rho * l_theta_star[j] * l_theta_star[i].adjoint()).trace();
        }
    }
    return blocks;
}

namespace {

// <a| (I - |psi><psi|) |b> without materializing the projector.
Complex projected_overlap(const CVector &psi, const CVector &a, const CVector &b) {
    return a.dot(b) - a.dot(psi) * psi.dot(b);
}

} // namespace

QfimBlocks sqfim_pure_complex(const PureDerivs &derivs) {
    const Eigen::Index k = derivs.num_params();
    CMatrix gkk(k, k), gmm(k, k), gkm(k, k);
    for (Eigen::Index i = 0; i < k; ++i) {
        for (Eigen::Index j = 0; j < k; ++j) {
            gkk(i, j) = projected_overlap(derivs.psi, derivs.d_theta[i], derivs.d_theta[j]);
            gmm(i, j) =
                projected_overlap(derivs.psi, derivs.d_theta_star[i], derivs.d_theta_star[j]);
            gkm(i, j) =
                projected_overlap(derivs.psi, derivs.d_theta[i], derivs.d_theta_star[j]);
        }
    }
    QfimBlocks blocks;
    blocks.kind = FimKind::Symmetric;
    blocks.j = 2.0 * (gkk + gmm.transpose());
    blocks.q = 2.0 * (gkm + gkm.transpose());
    return blocks;
}

QfimBlocks sqfim_pure_complex(const PureModel &model, const ParamPoint &p, const FdPolicy &fd) {
    return sqfim_pure_complex(pure_derivatives(model, p, fd));
}

CMatrix sqfim_real_pure(const PureDerivs &derivs) {
    const Eigen::Index k = derivs.num_params();
    std::vector<CVector> d_real(2 * k);
    for (Eigen::Index j = 0; j < k; ++j) {
        d_real[j] = derivs.d_theta[j] + derivs.d_theta_star[j];
        d_real[k + j] = kImag * (derivs.d_theta[j] - derivs.d_theta_star[j]);
    }
    CMatrix fim(2 * k, 2 * k);
    for (Eigen::Index i = 0; i < 2 * k; ++i) {
        for (Eigen::Index j = 0; j < 2 * k; ++j) {
            fim(i, j) = 4.0 * projected_overlap(derivs.psi, d_real[i], d_real[j]).real();
        }
    }
    return fim;
}

KBlocks k_blocks_pure(const PureDerivs &derivs) {
    const Eigen::Index k = derivs.num_params();
    CMatrix gkk(k, k), gmm(k, k), gkm(k, k);
    for (Eigen::Index i = 0; i < k; ++i) {
        for (Eigen::Index j = 0; j < k; ++j) {
            gkk(i, j) = projected_overlap(derivs.psi, derivs.d_theta[i], derivs.d_theta[j]);
            gmm(i, j) =
                projected_overlap(derivs.psi, derivs.d_theta_star[i], derivs.d_theta_star[j]);
            gkm(i, j) =
                projected_overlap(derivs.psi, derivs.d_theta[i], derivs.d_theta_star[j]);
        }
    }
    KBlocks blocks;
    blocks.k = -2.0 * kImag * (gkk - gmm.transpose());
    blocks.r = -2.0 * kImag * (gkm - gkm.transpose());
    return blocks;
}

KBlocks k_blocks_pure(const PureModel &model, const ParamPoint &p, const FdPolicy &fd) {
    return k_blocks_pure(pure_derivatives(model, p, fd));
}

CMatrix k_real_pure(const PureDerivs &derivs) {
    const Eigen::Index k = derivs.num_params();
    std::vector<CVector> d_real(2 * k);
    for (Eigen::Index j = 0; j < k; ++j) {
        d_real[j] = derivs.d_theta[j] + derivs.d_theta_star[j];
        d_real[k + j] = kImag * (derivs.d_theta[j] - derivs.d_theta_star[j]);
    }
    CMatrix out(2 * k, 2 * k);
    for (Eigen::Index i = 0; i < 2 * k; ++i) {
        for (Eigen::Index j = 0; j < 2 * k; ++j) {
            out(i, j) = 4.0 * projected_overlap(derivs.psi, d_real[i], d_real[j]).imag();
        }
    }
    return out;
}

CMatrix rqfim_inv_pure(const PureDerivs &derivs, const NumericPolicy &policy) {
    const CMatrix s = sqfim_pure_complex(derivs).assemble();
    const CMatrix s_inv = invert_fim(s, policy);
    const CMatrix kmat = k_blocks_pure(derivs).assemble();
    return s_inv + kImag * s_inv * kmat * s_inv;
}

CMatrix rqfim_inv_pure(const PureModel &model, const ParamPoint &p,
                       const NumericPolicy &policy, const FdPolicy &fd) {
    return rqfim_inv_pure(pure_derivatives(model, p, fd), policy);
}

CMatrix fubini_study_hessian(const PureModel &model, const ParamPoint &p, double step) {
    const CVector psi0 = model.evaluate(p.theta);
    const Eigen::Index k = p.size();
    const auto overlap = [&](const RVector &bar) -> double {
        RealRep r;
        r.bar = bar;
        const CVector psi = model.evaluate(from_real_rep(r).theta);
        return std::norm(psi0.dot(psi));
    };
    const RVector center = to_real_rep(p).bar;

    RMatrix hess(2 * k, 2 * k);
    const double f0 = overlap(center);
    for (Eigen::Index i = 0; i < 2 * k; ++i) {
        const double hi = step * std::max(1.0, std::abs(center(i)));
        for (Eigen::Index j = i; j < 2 * k; ++j) {
            double value = 0.0;
            if (i == j) {
                RVector x = center;
                x(i) = center(i) + hi;
                const double fp = overlap(x);
                x(i) = center(i) - hi;
                const double fm = overlap(x);
                value = (fp - 2.0 * f0 + fm) / (hi * hi);
            } else {
                const double hj = step * std::max(1.0, std::abs(center(j)));
                RVector x = center;
                x(i) = center(i) + hi;
                x(j) = center(j) + hj;
                const double fpp = overlap(x);
                x(j) = center(j) - hj;
                const double fpm = overlap(x);
                x(i) = center(i) - hi;
                const double fmm = overlap(x);
                x(j) = center(j) + hj;
                const double fmp = overlap(x);
                value = (fpp - fpm - fmp + fmm) / (4.0 * hi * hj);
            }
            hess(i, j) = value;
            hess(j, i) = value;
        }
    }
    const CMatrix real_fim = (-2.0 * hess).cast<Complex>();
    return 0.25 * to_complex(real_fim);
}

double fim_scale(const CMatrix &fim) {
    const Eigen::Index n = fim.rows();
    return fim.norm() / std::sqrt(static_cast<double>(std::max<Eigen::Index>(1, n)));
}

CMatrix invert_fim(const CMatrix &fim, const NumericPolicy &policy) {
    if (fim.rows() != fim.cols()) {
        throw DimensionError("invert_fim: matrix must be square");
    }
    const double scale = std::max(fim_scale(fim), 1e-300);
    const double threshold =
        policy.singular_fim_tol * std::pow(scale, static_cast<double>(fim.rows()));
    const Complex det = fim.determinant();
    if (std::abs(det) <= threshold) {
        throw SingularMatrixError("invert_fim: determinant " + std::to_string(std::abs(det)) +
                                  " below the singular gate; bound does not exist");
    }
    return fim.inverse();
}

} // namespace cqest
