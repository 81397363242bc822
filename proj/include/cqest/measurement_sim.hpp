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
 * Monte Carlo homodyne simulation for coherent-state encodings: Gaussian
 * quadrature sampling, linear-inversion estimation, and classical Fisher
 * information of the induced outcome distributions.
 */

#pragma once

#include <cstdint>
#include <vector>

#include "cqest/state_models.hpp"
#include "cqest/types.hpp"

namespace cqest {

/**
 * Homodyne measurement configuration. The phase selects the quadrature
 * (a e^{-i phi} + a^dag e^{i phi})/2: phi = 0 measures (a + a^dag)/2 and
 * phi = pi/2 the conjugate quadrature. With [a, a^dag] = 1 the vacuum
 * quadrature variance is 1/4, the default.
 */
struct HomodyneSpec {
    std::vector<double> phases;
    Eigen::Index shots = 1;
    std::uint64_t seed = 0;
    double quadrature_variance = 0.25;
};

/// Raw outcomes: shots x modes, plus the spec and true parameter they came from.
struct SampleSet {
    RMatrix outcomes;
    HomodyneSpec spec;
    Complex true_param{0.0, 0.0};
};

/// Per-mode quadrature mean Re(alpha_m e^{-i phi_m}) with
/// alpha_m = eps_m z + eta_m z^*.
double quadrature_mean(const CoherentKey &keys, Eigen::Index mode, double phase, Complex z);

/// Wirtinger derivative pair of the quadrature mean with respect to (z, z^*).
std::pair<Complex, Complex> quadrature_mean_derivs(const CoherentKey &keys, Eigen::Index mode,
                                                   double phase);

/**
 * Draws shots x modes Gaussian outcomes with the quadrature means above and
 * the configured variance. The generator is counter-based and keyed by
 * (seed, shot, mode), so identical specs give bit-identical samples.
 */
SampleSet sample_homodyne(const CoherentKey &keys, Complex z, const HomodyneSpec &spec);

/// Per-shot estimates and their empirical conjugate-extension covariance.
struct EstimatorStats {
    std::vector<Complex> estimates;
    Complex mean{0.0, 0.0};
    CMatrix covariance; // 2x2, [[E|dz|^2, E dz^2], [E dz*^2, E|dz|^2]]
};

/**
 * Linear inversion of the two-mode encoding: solves the 2x2 system mapping
 * (z, z^*) to the quadrature means, applied shot by shot. Throws
 * EncodingError when the system is singular.
 */
EstimatorStats estimate_two_mode(const SampleSet &samples, const CoherentKey &keys);

/// Classical FIM blocks for the complex parameter: I (FIM) and P (pseudo-FIM).
struct ClassicalFimBlocks {
    CMatrix i;
    CMatrix p;

    CMatrix assemble() const;
};

/// Analytic classical FIM of the product-Gaussian homodyne likelihood.
ClassicalFimBlocks gaussian_classical_fim(const CoherentKey &keys, const HomodyneSpec &spec);

/// Outer-product-of-scores estimator using the analytic Gaussian score; the
/// low_shot_warning flag is set below 1000 shots.
struct EmpiricalFim {
    ClassicalFimBlocks blocks;
    bool low_shot_warning = false;
};

EmpiricalFim empirical_fim(const SampleSet &samples, const CoherentKey &keys);

/// CSV export with header "shot,mode,outcome", LF line endings, full double
/// precision.
std::string samples_to_csv(const SampleSet &samples);

} // namespace cqest
