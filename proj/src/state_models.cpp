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

#include "cqest/state_models.hpp"

#include <cmath>
#include <random>

#include <unsupported/Eigen/MatrixFunctions>

#include "cqest/errors.hpp"
#include "cqest/rng.hpp"

namespace cqest {

DensityCheck check_density(const CMatrix &rho) {
    DensityCheck out;
    const double scale = std::max(1.0, rho.norm());
    out.hermiticity_residual = (rho - rho.adjoint()).norm() / scale;
    out.trace_deviation = std::abs(rho.trace() - Complex(1.0, 0.0));
    Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (rho + rho.adjoint()),
                                              Eigen::EigenvaluesOnly);
    out.lambda_min = es.eigenvalues()(0);
    return out;
}

DensityModel to_density_model(const PureModel &model) {
    DensityModel out;
    out.dim = model.dim;
    out.num_params = model.num_params;
    out.evaluate = [eval = model.evaluate](const CVector &theta) -> CMatrix {
        const CVector psi = eval(theta);
        return psi * psi.adjoint();
    };
    if (model.analytic_derivs) {
        out.analytic_derivs = [eval = model.evaluate, derivs = model.analytic_derivs](
                                  const CVector &theta,
                                  Eigen::Index j) -> std::pair<CMatrix, CMatrix> {
            const CVector psi = eval(theta);
            const auto [dz, dzs] = derivs(theta, j);
            // d_z rho = |d_z psi><psi| + |psi><d_{z*} psi| (the bra picks up
            // the conjugate derivative).
            const CMatrix drho_z = dz * psi.adjoint() + psi * dzs.adjoint();
            const CMatrix drho_zs = dzs * psi.adjoint() + psi * dz.adjoint();
            return {drho_z, drho_zs};
        };
    }
    return out;
}

std::pair<CMatrix, CMatrix> ladder_ops(const FockConfig &cfg) {
    if (cfg.truncation < 2) {
        throw InvalidArgumentError("ladder_ops: truncation must be >= 2");
    }
    const Eigen::Index n = cfg.truncation;
    CMatrix a = CMatrix::Zero(n, n);
    for (Eigen::Index level = 1; level < n; ++level) {
        a(level - 1, level) = std::sqrt(static_cast<double>(level));
    }
    return {a, a.adjoint()};
}

bool truncation_adequate(Complex alpha, const FockConfig &cfg) {
    const double mean_n = std::norm(alpha);
    return mean_n + 5.0 * std::sqrt(mean_n) <= static_cast<double>(cfg.truncation);
}

CMatrix displacement(Complex alpha, const FockConfig &cfg) {
    const auto [a, adag] = ladder_ops(cfg);
    const CMatrix generator = alpha * adag - std::conj(alpha) * a;
    return generator.exp();
}

CVector coherent_state(Complex alpha, const FockConfig &cfg) {
    CVector vac = CVector::Zero(cfg.truncation);
    vac(0) = 1.0;
    return displacement(alpha, cfg) * vac;
}

namespace {

CVector kron_vec(const CVector &a, const CVector &b) {
    CVector out(a.size() * b.size());
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        out.segment(i * b.size(), b.size()) = a(i) * b;
    }
    return out;
}

struct ModeDerivatives {
    CVector state;
    CVector d_z;
    CVector d_zstar;
};

ModeDerivatives coherent_mode(Complex eps, Complex eta, Complex z, const FockConfig &cfg) {
    const Complex alpha = eps * z + eta * std::conj(z);
    const auto [a, adag] = ladder_ops(cfg);
    const CMatrix d = displacement(alpha, cfg);
    CVector vac = CVector::Zero(cfg.truncation);
    vac(0) = 1.0;

    const Complex phase_z = 0.5 * (alpha * std::conj(eta) - std::conj(alpha) * eps);
    const Complex phase_zstar = 0.5 * (alpha * std::conj(eps) - std::conj(alpha) * eta);

    ModeDerivatives out;
    out.state = d * vac;
    out.d_z = d * (eps * (adag * vac) - phase_z * vac);
    out.d_zstar = d * (eta * (adag * vac) - phase_zstar * vac);
    return out;
}

} // namespace

PureModel coherent_model(const CoherentKey &keys, const FockConfig &cfg) {
    if (keys.modes.empty()) {
        throw InvalidArgumentError("coherent_model: at least one mode required");
    }
    const Eigen::Index modes = keys.num_modes();
    Eigen::Index dim = 1;
    for (Eigen::Index m = 0; m < modes; ++m) {
        dim *= cfg.truncation;
    }

    PureModel out;
    out.dim = dim;
    out.num_params = 1;
    out.evaluate = [keys, cfg](const CVector &theta) -> CVector {
        const Complex z = theta(0);
        CVector psi;
        for (const auto &[eps, eta] : keys.modes) {
            const CVector mode = coherent_state(eps * z + eta * std::conj(z), cfg);
            psi = psi.size() == 0 ? mode : kron_vec(psi, mode);
        }
        return psi;
    };
    out.analytic_derivs = [keys, cfg](const CVector &theta,
                                      Eigen::Index) -> std::pair<CVector, CVector> {
        const Complex z = theta(0);
        std::vector<ModeDerivatives> per_mode;
        per_mode.reserve(keys.modes.size());
        for (const auto &[eps, eta] : keys.modes) {
            per_mode.push_back(coherent_mode(eps, eta, z, cfg));
        }
        CVector dz, dzs;
        for (std::size_t m = 0; m < per_mode.size(); ++m) {
            CVector term_z, term_zs;
            for (std::size_t n = 0; n < per_mode.size(); ++n) {
                const CVector &factor_z = n == m ? per_mode[n].d_z : per_mode[n].state;
                const CVector &factor_zs = n == m ? per_mode[n].d_zstar : per_mode[n].state;
                term_z = term_z.size() == 0 ? factor_z : kron_vec(term_z, factor_z);
                term_zs = term_zs.size() == 0 ? factor_zs : kron_vec(term_zs, factor_zs);
            }
            dz = dz.size() == 0 ? term_z : CVector(dz + term_z);
            dzs = dzs.size() == 0 ? term_zs : CVector(dzs + term_zs);
        }
        return {dz, dzs};
    };
    return out;
}

CMatrix epsilon_mix(const CVector &psi, double eps) {
    if (!(eps > 0.0 && eps < 1.0)) {
        throw InvalidArgumentError("epsilon_mix: mixing weight must be in (0, 1)");
    }
    const Eigen::Index d = psi.size();
    return (1.0 - eps) * (psi * psi.adjoint()) +
           (eps / static_cast<double>(d)) * CMatrix::Identity(d, d);
}

DensityModel epsilon_mix_model(const PureModel &model, double eps) {
    if (!(eps > 0.0 && eps < 1.0)) {
        throw InvalidArgumentError("epsilon_mix_model: mixing weight must be in (0, 1)");
    }
    DensityModel out;
    out.dim = model.dim;
    out.num_params = model.num_params;
    out.evaluate = [eval = model.evaluate, eps](const CVector &theta) -> CMatrix {
        return epsilon_mix(eval(theta), eps);
    };
    if (model.analytic_derivs) {
        const DensityModel pure_density = to_density_model(model);
        out.analytic_derivs = [derivs = pure_density.analytic_derivs, eps](
                                  const CVector &theta,
                                  Eigen::Index j) -> std::pair<CMatrix, CMatrix> {
            auto [dz, dzs] = derivs(theta, j);
            return {(1.0 - eps) * dz, (1.0 - eps) * dzs};
        };
    }
    return out;
}

Eigen::Vector3d QubitSpec::bloch(Complex theta) const {
    const double a = theta.real();
    const double b = theta.imag();
    Eigen::Vector2d lin(a, b);
    Eigen::Vector3d quad(a * a, b * b, a * b);
    return r0 + linear * lin + quadratic * quad;
}

DensityModel builtin_qubit_model(const QubitSpec &spec) {
    DensityModel out;
    out.dim = 2;
    out.num_params = 1;
    out.evaluate = [spec](const CVector &theta) -> CMatrix {
        const Eigen::Vector3d r = spec.bloch(theta(0));
        if (r.norm() >= 1.0) {
            throw InvalidArgumentError("builtin_qubit_model: Bloch vector overflow");
        }
        CMatrix rho(2, 2);
        rho(0, 0) = 0.5 * (1.0 + r(2));
        rho(1, 1) = 0.5 * (1.0 - r(2));
        rho(0, 1) = 0.5 * Complex(r(0), -r(1));
        rho(1, 0) = 0.5 * Complex(r(0), r(1));
        return rho;
    };
    return out;
}

QubitSpec default_qubit_spec() {
    QubitSpec spec;
    spec.r0 = Eigen::Vector3d(0.25, -0.15, 0.30);
    spec.linear << 0.20, -0.10, 0.15, 0.20, -0.10, 0.15;
    spec.quadratic << 0.05, -0.04, 0.08, 0.06, 0.05, -0.03, -0.07, 0.04, 0.05;
    return spec;
}

namespace {

std::mt19937_64 seeded_engine(std::uint64_t seed) {
    return std::mt19937_64(splitmix64(seed));
}

} // namespace

QubitSpec random_qubit_spec(std::uint64_t seed) {
    auto rng = seeded_engine(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    QubitSpec spec;
    Eigen::Vector3d dir(normal(rng), normal(rng), normal(rng));
    spec.r0 = 0.45 * dir / dir.norm();
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 2; ++j) {
            spec.linear(i, j) = 0.15 * normal(rng);
        }
        for (int j = 0; j < 3; ++j) {
            spec.quadratic(i, j) = 0.08 * normal(rng);
        }
    }
    return spec;
}

DensityModel random_full_rank_model(Eigen::Index dim, Eigen::Index num_params,
                                    std::uint64_t seed) {
    if (dim < 2 || num_params < 1) {
        throw InvalidArgumentError("random_full_rank_model: dim >= 2, num_params >= 1");
    }
    auto rng = seeded_engine(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    const auto draw = [&]() {
        CMatrix m(dim, dim);
        for (Eigen::Index i = 0; i < dim; ++i) {
            for (Eigen::Index j = 0; j < dim; ++j) {
                m(i, j) = Complex(normal(rng), normal(rng));
            }
        }
        return m;
    };
    const CMatrix b0 = draw();
    std::vector<CMatrix> b_alpha, b_beta, b_cross;
    for (Eigen::Index j = 0; j < num_params; ++j) {
        b_alpha.push_back(0.4 * draw());
        b_beta.push_back(0.4 * draw());
        b_cross.push_back(0.2 * draw());
    }
    const double delta = 0.5;

    DensityModel out;
    out.dim = dim;
    out.num_params = num_params;
    out.evaluate = [=](const CVector &theta) -> CMatrix {
        CMatrix b = b0;
        for (Eigen::Index j = 0; j < num_params; ++j) {
            const double a = theta(j).real();
            const double be = theta(j).imag();
            b += a * b_alpha[j] + be * b_beta[j] + (a * be) * b_cross[j];
        }
        CMatrix rho = b * b.adjoint() + delta * CMatrix::Identity(dim, dim);
        rho /= rho.trace().real();
        return rho;
    };
    return out;
}

PureModel random_pure_qubit_model(std::uint64_t seed) {
    auto rng = seeded_engine(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    const auto draw_vec = [&]() {
        CVector v(2);
        v(0) = Complex(normal(rng), normal(rng));
        v(1) = Complex(normal(rng), normal(rng));
        return v;
    };
    const CVector v0 = draw_vec();
    const CVector v_alpha = 0.5 * draw_vec();
    const CVector v_beta = 0.5 * draw_vec();
    const CVector v_cross = 0.25 * draw_vec();

    PureModel out;
    out.dim = 2;
    out.num_params = 1;
    out.evaluate = [=](const CVector &theta) -> CVector {
        const double a = theta(0).real();
        const double b = theta(0).imag();
        CVector v = v0 + a * v_alpha + b * v_beta + (a * b) * v_cross;
        const double norm = v.norm();
        if (norm < 1e-12) {
            throw EvaluationError("random_pure_qubit_model: state vanished");
        }
        return v / norm;
    };
    return out;
}

} // namespace cqest
