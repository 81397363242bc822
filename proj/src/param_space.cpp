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

#include "cqest/param_space.hpp"

#include <algorithm>
#include <cmath>

#include "cqest/complex_map.hpp"
#include "cqest/errors.hpp"

namespace cqest {

RealRep to_real_rep(const ParamPoint &p) {
    const Eigen::Index k = p.size();
    RealRep r;
    r.bar.resize(2 * k);
    r.bar.head(k) = p.theta.real();
    r.bar.tail(k) = p.theta.imag();
    return r;
}

ConjExt to_conj_ext(const ParamPoint &p) {
    const Eigen::Index k = p.size();
    ConjExt c;
    c.hat.resize(2 * k);
    c.hat.head(k) = p.theta;
    c.hat.tail(k) = p.theta.conjugate();
    return c;
}

ParamPoint from_real_rep(const RealRep &r) {
    if (r.bar.size() % 2 != 0) {
        throw DimensionError("from_real_rep: length must be even");
    }
    const Eigen::Index k = r.bar.size() / 2;
    ParamPoint p;
    p.theta = r.bar.head(k).cast<Complex>() + kImag * r.bar.tail(k).cast<Complex>();
    return p;
}

RealRep real_from_conj(const ConjExt &c) {
    if (c.hat.size() % 2 != 0 || c.hat.size() == 0) {
        throw DimensionError("real_from_conj: length must be even and positive");
    }
    const Eigen::Index k = c.hat.size() / 2;
    const double mismatch = (c.hat.tail(k).conjugate() - c.hat.head(k)).norm();
    if (mismatch > 1e-12 * std::max(1.0, c.hat.norm())) {
        throw ConjugateConsistencyError(
            "real_from_conj: second half is not the conjugate of the first");
    }
    const CVector mapped = m_matrix(k) * c.hat;
    if (mapped.imag().norm() > 1e-12 * std::max(1.0, mapped.norm())) {
        throw ConjugateConsistencyError("real_from_conj: imaginary residue after mapping");
    }
    RealRep r;
    r.bar = mapped.real();
    return r;
}

double FdPolicy::step_for(Complex coordinate) const {
    if (step <= 0.0) {
        throw InvalidArgumentError("FdPolicy: step must be positive");
    }
    if (scaling == Scaling::Absolute) {
        return step;
    }
    return step * std::max(1.0, std::abs(coordinate));
}

namespace {

template <typename Value, typename Fn>
std::pair<Value, Value> wirtinger_pair(const Fn &f, const ParamPoint &p, Eigen::Index j,
                                       const FdPolicy &policy) {
    if (j < 0 || j >= p.size()) {
        throw InvalidArgumentError("wirtinger_derivs: parameter index out of range");
    }
    const double h = policy.step_for(p.theta(j));
    CVector shifted = p.theta;

    const auto eval = [&](Complex delta) -> Value {
        shifted(j) = p.theta(j) + delta;
        Value out = f(shifted);
        shifted(j) = p.theta(j);
        return out;
    };

    const Value fxp = eval(Complex(h, 0.0));
    const Value fxm = eval(Complex(-h, 0.0));
    const Value fyp = eval(Complex(0.0, h));
    const Value fym = eval(Complex(0.0, -h));

    const Value dx = (fxp - fxm) / (2.0 * h);
    const Value dy = (fyp - fym) / (2.0 * h);

    return {0.5 * (dx - kImag * dy), 0.5 * (dx + kImag * dy)};
}

} // namespace

std::pair<CMatrix, CMatrix> wirtinger_derivs(const MatrixFn &f, const ParamPoint &p,
                                             Eigen::Index j, const FdPolicy &policy) {
    return wirtinger_pair<CMatrix>(f, p, j, policy);
}

std::pair<CVector, CVector> wirtinger_derivs(const VectorFn &f, const ParamPoint &p,
                                             Eigen::Index j, const FdPolicy &policy) {
    return wirtinger_pair<CVector>(f, p, j, policy);
}

CMatrix wirtinger_jacobian(const VectorFn &f, const ParamPoint &p, const FdPolicy &policy) {
    const Eigen::Index k = p.size();
    const Eigen::Index m = f(p.theta).size();
    CMatrix jac(2 * m, 2 * k);
    for (Eigen::Index j = 0; j < k; ++j) {
        const auto [dz, dzs] = wirtinger_derivs(f, p, j, policy);
        jac.block(0, j, m, 1) = dz;
        jac.block(0, k + j, m, 1) = dzs;
        jac.block(m, j, m, 1) = dzs.conjugate();
        jac.block(m, k + j, m, 1) = dz.conjugate();
    }
    return jac;
}

RMatrix real_jacobian(const VectorFn &f, const ParamPoint &p, const FdPolicy &policy) {
    const Eigen::Index k = p.size();
    const Eigen::Index m = f(p.theta).size();
    RMatrix jac(2 * m, 2 * k);
    CVector shifted = p.theta;
    for (Eigen::Index j = 0; j < k; ++j) {
        const double h = policy.step_for(p.theta(j));
        for (int axis = 0; axis < 2; ++axis) {
            const Complex delta = axis == 0 ? Complex(h, 0.0) : Complex(0.0, h);
            shifted(j) = p.theta(j) + delta;
            const CVector fp = f(shifted);
            shifted(j) = p.theta(j) - delta;
            const CVector fm = f(shifted);
            shifted(j) = p.theta(j);
            const CVector d = (fp - fm) / (2.0 * h);
            jac.block(0, axis * k + j, m, 1) = d.real();
            jac.block(m, axis * k + j, m, 1) = d.imag();
        }
    }
    return jac;
}

} // namespace cqest
