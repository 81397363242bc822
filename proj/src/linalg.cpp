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

#include "cqest/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cqest/errors.hpp"

namespace cqest {

bool is_hermitian(const CMatrix &g, double tol) {
    if (g.rows() != g.cols()) {
        return false;
    }
    const double scale = std::max(1.0, g.norm());
    return (g - g.adjoint()).norm() <= tol * scale;
}

double relative_residual(const CMatrix &actual, const CMatrix &reference) {
    const double scale = std::max(1.0, reference.norm());
    return (actual - reference).norm() / scale;
}

namespace {

double condition_number(const CMatrix &v) {
    Eigen::JacobiSVD<CMatrix> svd(v);
    const auto &sv = svd.singularValues();
    const double smin = sv(sv.size() - 1);
    if (smin <= 0.0) {
        return std::numeric_limits<double>::infinity();
    }
    return sv(0) / smin;
}

} // namespace

EigDecomposition eig(const CMatrix &g, const NumericPolicy &policy) {
    if (g.rows() != g.cols()) {
        throw DimensionError("eig: matrix must be square");
    }
    EigDecomposition out;
    if (is_hermitian(g, policy.hermiticity_tol)) {
        const CMatrix sym = 0.5 * (g + g.adjoint());
        Eigen::SelfAdjointEigenSolver<CMatrix> solver(sym);
        if (solver.info() != Eigen::Success) {
            throw NumericalError("eig: self-adjoint solver did not converge");
        }
        out.values = solver.eigenvalues().cast<Complex>();
        out.vectors = solver.eigenvectors();
        out.condition = 1.0;
        return out;
    }
    Eigen::ComplexEigenSolver<CMatrix> solver(g, /*computeEigenvectors=*/true);
    if (solver.info() != Eigen::Success) {
        throw NumericalError("eig: complex Schur iteration did not converge");
    }
    out.values = solver.eigenvalues();
    out.vectors = solver.eigenvectors();
    out.condition = condition_number(out.vectors);
    return out;
}

CMatrix matrix_function(const CMatrix &g, const std::function<Complex(Complex)> &f,
                        const NumericPolicy &policy) {
    const EigDecomposition d = eig(g, policy);
    if (!std::isfinite(d.condition) || d.condition > policy.defect_threshold) {
        throw DefectiveMatrixError("matrix_function: eigenvector condition number " +
                                   std::to_string(d.condition) +
                                   " exceeds the defect threshold");
    }
    CVector fvals(d.values.size());
    for (Eigen::Index i = 0; i < d.values.size(); ++i) {
        fvals(i) = f(d.values(i));
    }
    if (d.condition == 1.0) {
        return d.vectors * fvals.asDiagonal() * d.vectors.adjoint();
    }
    // V f(Lambda) V^{-1} via a solve against V^T on the right.
    const CMatrix left = d.vectors * fvals.asDiagonal();
    return d.vectors.transpose().partialPivLu().solve(left.transpose()).transpose();
}

CMatrix matrix_abs(const CMatrix &g, const NumericPolicy &policy) {
    return matrix_function(
        g, [](Complex z) { return Complex(std::abs(z), 0.0); }, policy);
}

double trace_abs(const CMatrix &g, const NumericPolicy &policy) {
    const EigDecomposition d = eig(g, policy);
    if (!std::isfinite(d.condition) || d.condition > policy.defect_threshold) {
        throw DefectiveMatrixError("trace_abs: input is numerically defective");
    }
    double sum = 0.0;
    for (Eigen::Index i = 0; i < d.values.size(); ++i) {
        sum += std::abs(d.values(i));
    }
    return sum;
}

PsdOrdering psd_order(const CMatrix &a, const CMatrix &b, double tol,
                      const NumericPolicy &policy) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw DimensionError("psd_order: size mismatch");
    }
    if (!is_hermitian(a, policy.hermiticity_tol) || !is_hermitian(b, policy.hermiticity_tol)) {
        throw NotHermitianError("psd_order: inputs must be Hermitian");
    }
    const CMatrix diff = a - b;
    const CMatrix herm = 0.5 * (diff + diff.adjoint());
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(herm, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw NumericalError("psd_order: eigenvalue computation failed");
    }
    PsdOrdering out;
    out.lambda_min = solver.eigenvalues()(0);
    out.holds = out.lambda_min >= -tol;
    return out;
}

InverseResult robust_inverse(const CMatrix &g, double rank_tol) {
    if (g.rows() != g.cols()) {
        throw DimensionError("robust_inverse: matrix must be square");
    }
    Eigen::JacobiSVD<CMatrix> svd(g, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto &sv = svd.singularValues();
    const double smax = sv.size() > 0 ? sv(0) : 0.0;
    const double cutoff = rank_tol * std::max(smax, 1e-300);

    InverseResult out;
    out.smallest_singular_value = sv.size() > 0 ? sv(sv.size() - 1) : 0.0;
    CVector inv_sv = CVector::Zero(sv.size());
    for (Eigen::Index i = 0; i < sv.size(); ++i) {
        if (sv(i) > cutoff) {
            inv_sv(i) = Complex(1.0 / sv(i), 0.0);
            ++out.rank;
        }
    }
    out.full_rank = out.rank == g.rows();
    out.inverse = svd.matrixV() * inv_sv.asDiagonal() * svd.matrixU().adjoint();
    return out;
}

} // namespace cqest
