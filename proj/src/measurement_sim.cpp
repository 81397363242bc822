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

#include "cqest/measurement_sim.hpp"

#include <cmath>
#include <cstdio>

#include "cqest/errors.hpp"
#include "cqest/rng.hpp"

namespace cqest {

double quadrature_mean(const CoherentKey &keys, Eigen::Index mode, double phase, Complex z) {
    const auto &[eps, eta] = keys.modes.at(static_cast<std::size_t>(mode));
    const Complex alpha = eps * z + eta * std::conj(z);
    return (alpha * std::exp(-kImag * phase)).real();
}

std::pair<Complex, Complex> quadrature_mean_derivs(const CoherentKey &keys, Eigen::Index mode,
                                                   double phase) {
    const auto &[eps, eta] = keys.modes.at(static_cast<std::size_t>(mode));
    const Complex minus = std::exp(-kImag * phase);
    const Complex plus = std::exp(kImag * phase);
    const Complex d_z = 0.5 * (eps * minus + std::conj(eta) * plus);
    const Complex d_zstar = 0.5 * (eta * minus + std::conj(eps) * plus);
    return {d_z, d_zstar};
}

SampleSet sample_homodyne(const CoherentKey &keys, Complex z, const HomodyneSpec &spec) {
    const Eigen::Index modes = keys.num_modes();
    if (static_cast<Eigen::Index>(spec.phases.size()) != modes) {
        throw InvalidArgumentError("sample_homodyne: one phase per mode required");
    }
    if (spec.shots < 1) {
        throw InvalidArgumentError("sample_homodyne: shots must be >= 1");
    }
    if (spec.quadrature_variance < 0.0) {
        throw InvalidArgumentError("sample_homodyne: variance must be nonnegative");
    }
    SampleSet out;
    out.spec = spec;
    out.true_param = z;
    out.outcomes.resize(spec.shots, modes);

    const double sigma = std::sqrt(spec.quadrature_variance);
    for (Eigen::Index m = 0; m < modes; ++m) {
        const double mean = quadrature_mean(keys, m, spec.phases[m], z);
        for (Eigen::Index s = 0; s < spec.shots; ++s) {
            const std::uint64_t key = mix_key(spec.seed, static_cast<std::uint64_t>(s),
                                              static_cast<std::uint64_t>(m));
            out.outcomes(s, m) = mean + sigma * counter_gaussian(key);
        }
    }
    return out;
}

namespace {

// 2x2 system mapping (z, z^*) to the two quadrature means.
Eigen::Matrix2cd encoding_matrix(const CoherentKey &keys, const HomodyneSpec &spec) {
    Eigen::Matrix2cd c;
    for (Eigen::Index m = 0; m < 2; ++m) {
        const auto [dz, dzs] = quadrature_mean_derivs(keys, m, spec.phases[m]);
        c(m, 0) = dz;
        c(m, 1) = dzs;
    }
    return c;
}

} // namespace

EstimatorStats estimate_two_mode(const SampleSet &samples, const CoherentKey &keys) {
    if (keys.num_modes() != 2 || samples.outcomes.cols() != 2) {
        throw InvalidArgumentError("estimate_two_mode: exactly two modes required");
    }
    const Eigen::Matrix2cd c = encoding_matrix(keys, samples.spec);
    if (std::abs(c.determinant()) < 1e-12) {
        throw EncodingError("estimate_two_mode: the key/phase encoding is not invertible");
    }
    const Eigen::Matrix2cd c_inv = c.inverse();

    EstimatorStats stats;
    const Eigen::Index shots = samples.outcomes.rows();
    stats.estimates.reserve(static_cast<std::size_t>(shots));
    Complex sum{0.0, 0.0};
    for (Eigen::Index s = 0; s < shots; ++s) {
        const Eigen::Vector2cd q(Complex(samples.outcomes(s, 0), 0.0),
                                 Complex(samples.outcomes(s, 1), 0.0));
        const Complex z_hat = (c_inv * q)(0);
        stats.estimates.push_back(z_hat);
        sum += z_hat;
    }
    stats.mean = sum / static_cast<double>(shots);

    stats.covariance = CMatrix::Zero(2, 2);
    if (shots > 1) {
        Complex acc_abs{0.0, 0.0};
        Complex acc_sq{0.0, 0.0};
        for (const Complex &z_hat : stats.estimates) {
            const Complex d = z_hat - stats.mean;
            acc_abs += d * std::conj(d);
            acc_sq += d * d;
        }
        const double norm = static_cast<double>(shots - 1);
        stats.covariance(0, 0) = acc_abs / norm;
        stats.covariance(1, 1) = acc_abs / norm;
        stats.covariance(0, 1) = acc_sq / norm;
        stats.covariance(1, 0) = std::conj(acc_sq) / norm;
    }
    return stats;
}

CMatrix ClassicalFimBlocks::assemble() const {
    const Eigen::Index k = i.rows();
    CMatrix full(2 * k, 2 * k);
    full.topLeftCorner(k, k) = i;
    full.topRightCorner(k, k) = p;
    full.bottomLeftCorner(k, k) = p.conjugate();
    full.bottomRightCorner(k, k) = i.conjugate();
    return full;
}

ClassicalFimBlocks gaussian_classical_fim(const CoherentKey &keys, const HomodyneSpec &spec) {
    if (static_cast<Eigen::Index>(spec.phases.size()) != keys.num_modes()) {
        throw InvalidArgumentError("gaussian_classical_fim: one phase per mode required");
    }
    if (spec.quadrature_variance <= 0.0) {
        throw InvalidArgumentError("gaussian_classical_fim: variance must be positive");
    }
    ClassicalFimBlocks blocks;
    blocks.i = CMatrix::Zero(1, 1);
    blocks.p = CMatrix::Zero(1, 1);
    for (Eigen::Index m = 0; m < keys.num_modes(); ++m) {
        const auto [dz, dzs] = quadrature_mean_derivs(keys, m, spec.phases[m]);
        // Score with respect to theta^* carries the d_{z*} mean derivative.
        blocks.i(0, 0) += dzs * std::conj(dzs) / spec.quadrature_variance;
        blocks.p(0, 0) += dzs * dzs / spec.quadrature_variance;
    }
    return blocks;
}

EmpiricalFim empirical_fim(const SampleSet &samples, const CoherentKey &keys) {
    const Eigen::Index shots = samples.outcomes.rows();
    const Eigen::Index modes = samples.outcomes.cols();
    if (keys.num_modes() != modes) {
        throw InvalidArgumentError("empirical_fim: key/mode mismatch");
    }
    const double v = samples.spec.quadrature_variance;
    if (v <= 0.0) {
        throw InvalidArgumentError("empirical_fim: variance must be positive");
    }

    std::vector<double> means(static_cast<std::size_t>(modes));
    std::vector<Complex> mean_derivs(static_cast<std::size_t>(modes));
    for (Eigen::Index m = 0; m < modes; ++m) {
        means[static_cast<std::size_t>(m)] =
            quadrature_mean(keys, m, samples.spec.phases[m], samples.true_param);
        mean_derivs[static_cast<std::size_t>(m)] =
            quadrature_mean_derivs(keys, m, samples.spec.phases[m]).second;
    }

    Complex acc_i{0.0, 0.0};
    Complex acc_p{0.0, 0.0};
    for (Eigen::Index s = 0; s < shots; ++s) {
        Complex score{0.0, 0.0};
        for (Eigen::Index m = 0; m < modes; ++m) {
            const double residual = samples.outcomes(s, m) - means[static_cast<std::size_t>(m)];
            score += residual / v * mean_derivs[static_cast<std::size_t>(m)];
        }
        acc_i += score * std::conj(score);
        acc_p += score * score;
    }

    EmpiricalFim out;
    out.low_shot_warning = shots < 1000;
    out.blocks.i = CMatrix::Constant(1, 1, acc_i / static_cast<double>(shots));
    out.blocks.p = CMatrix::Constant(1, 1, acc_p / static_cast<double>(shots));
    return out;
}

std::string samples_to_csv(const SampleSet &samples) {
    std::string csv = "shot,mode,outcome\n";
    char buffer[96];
    for (Eigen::Index s = 0; s < samples.outcomes.rows(); ++s) {
        for (Eigen::Index m = 0; m < samples.outcomes.cols(); ++m) {
            std::snprintf(buffer, sizeof(buffer), "%lld,%lld,%.17g\n",
                          static_cast<long long>(s), static_cast<long long>(m),
                          samples.outcomes(s, m));
            csv += buffer;
        }
    }
    return csv;
}

} // namespace cqest
