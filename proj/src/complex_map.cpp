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

#include "cqest/complex_map.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "cqest/errors.hpp"
#include "cqest/linalg.hpp"

namespace cqest {

CMatrix m_matrix(Eigen::Index l) {
    if (l < 1) {
        throw InvalidArgumentError("m_matrix: half-size must be >= 1");
    }
    CMatrix m = CMatrix::Zero(2 * l, 2 * l);
    const CMatrix eye = CMatrix::Identity(l, l);
    m.topLeftCorner(l, l) = 0.5 * eye;
    m.topRightCorner(l, l) = 0.5 * eye;
    m.bottomLeftCorner(l, l) = -0.5 * kImag * eye;
    m.bottomRightCorner(l, l) = 0.5 * kImag * eye;
    return m;
}

CMatrix swap_halves(Eigen::Index m) {
    if (m < 1) {
        throw InvalidArgumentError("swap_halves: half-size must be >= 1");
    }
    CMatrix s = CMatrix::Zero(2 * m, 2 * m);
    s.topRightCorner(m, m) = CMatrix::Identity(m, m);
    s.bottomLeftCorner(m, m) = CMatrix::Identity(m, m);
    return s;
}

CMatrix sigma(Eigen::Index k) {
    return swap_halves(2 * k);
}

namespace {

void require_even(const CMatrix &g, const char *who) {
    if (g.rows() % 2 != 0 || g.cols() % 2 != 0 || g.rows() == 0 || g.cols() == 0) {
        throw DimensionError(std::string(who) + ": dimensions must be even and positive");
    }
}

} // namespace

CMatrix to_complex(const CMatrix &g) {
    require_even(g, "to_complex");
    const Eigen::Index d = g.rows() / 2;
    const Eigen::Index k = g.cols() / 2;
    // M^{-1} = 2 M^dagger, so <G> = 4 M_{2d}^dagger G M_{2k}.
    return 4.0 * m_matrix(d).adjoint() * g * m_matrix(k);
}

CMatrix from_complex(const CMatrix &h) {
    require_even(h, "from_complex");
    const Eigen::Index d = h.rows() / 2;
    const Eigen::Index k = h.cols() / 2;
    return m_matrix(d) * h * m_matrix(k).adjoint();
}

double MapPropertyReport::worst() const {
    return *std::max_element(max_violation.begin(), max_violation.end());
}

bool MapPropertyReport::all_pass(double tol) const {
    return worst() <= tol;
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

CMatrix random_complex(Eigen::Index rows, Eigen::Index cols, std::mt19937_64 &rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    CMatrix g(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        for (Eigen::Index j = 0; j < cols; ++j) {
            g(i, j) = Complex(normal(rng), normal(rng));
        }
    }
    return g;
}

RMatrix random_real(Eigen::Index rows, Eigen::Index cols, std::mt19937_64 &rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    RMatrix g(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        for (Eigen::Index j = 0; j < cols; ++j) {
            g(i, j) = normal(rng);
        }
    }
    return g;
}

double rel_err(const CMatrix &lhs, const CMatrix &rhs) {
    const double scale = std::max({1.0, lhs.norm(), rhs.norm()});
    return (lhs - rhs).norm() / scale;
}

// Square draws with condition number below 1e6; counts resamples.
CMatrix well_conditioned_draw(Eigen::Index n, std::mt19937_64 &rng, int &resamples) {
    for (;;) {
        CMatrix g = random_complex(n, n, rng);
        Eigen::JacobiSVD<CMatrix> svd(g);
        const auto &sv = svd.singularValues();
        if (sv(sv.size() - 1) > 0.0 && sv(0) / sv(sv.size() - 1) < 1e6) {
            return g;
        }
        ++resamples;
    }
}

} // namespace

MapPropertyReport verify_map_properties(int trials, MapDims dims, std::uint64_t seed,
                                        const NumericPolicy &policy) {
    if (trials < 1) {
        throw InvalidArgumentError("verify_map_properties: trials must be >= 1");
    }
    if (dims.d < 1 || dims.k < 1) {
        throw InvalidArgumentError("verify_map_properties: dims must be >= 1");
    }
    MapPropertyReport report;
    report.trials = trials;
    report.dims = dims;
    report.seed = seed;

    const Eigen::Index rows = 2 * dims.d;
    const Eigen::Index cols = 2 * dims.k;
    // Square shapes for the properties that need products/inverses/traces.
    const Eigen::Index n = cols;

    for (int t = 0; t < trials; ++t) {
        std::mt19937_64 rng(splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(t))));

        // (i) linearity over a random complex coefficient.
        {
            const CMatrix g = random_complex(rows, cols, rng);
            const CMatrix h = random_complex(rows, cols, rng);
            std::normal_distribution<double> normal(0.0, 1.0);
            const Complex lambda(normal(rng), normal(rng));
            const double v = rel_err(to_complex(g + lambda * h),
                                     to_complex(g) + lambda * to_complex(h));
            report.max_violation[0] = std::max(report.max_violation[0], v);
        }

        // (ii) Hermiticity equivalence, both directions.
        {
            CMatrix g = random_complex(n, n, rng);
            g = 0.5 * (g + g.adjoint());
            const CMatrix mapped = to_complex(g);
            double v = (mapped - mapped.adjoint()).norm() / std::max(1.0, mapped.norm());
            CMatrix h = random_complex(n, n, rng);
            h = 0.5 * (h + h.adjoint());
            const CMatrix back = from_complex(h);
            v = std::max(v, (back - back.adjoint()).norm() / std::max(1.0, back.norm()));
            report.max_violation[1] = std::max(report.max_violation[1], v);
        }

        // (iii) <G>^{-1} = (1/4) <G^{-1}> on well-conditioned draws.
        {
            const CMatrix g = well_conditioned_draw(n, rng, report.resamples);
            const CMatrix lhs = to_complex(g).inverse();
            const CMatrix rhs = 0.25 * to_complex(g.inverse());
            report.max_violation[2] = std::max(report.max_violation[2], rel_err(lhs, rhs));
        }

        // (iv) PSD preservation for real symmetric PSD draws.
        {
            const RMatrix a = random_real(n, n, rng);
            const CMatrix g = (a.transpose() * a).cast<Complex>();
            const CMatrix mapped = to_complex(g);
            Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (mapped + mapped.adjoint()),
                                                      Eigen::EigenvaluesOnly);
            const double floor = es.eigenvalues()(0);
            const double v = std::max(0.0, -floor) / std::max(1.0, mapped.norm());
            report.max_violation[3] = std::max(report.max_violation[3], v);
        }

        // (v) <G^dagger> = <G>^dagger.
        {
            const CMatrix g = random_complex(rows, cols, rng);
            report.max_violation[4] = std::max(
                report.max_violation[4],
                rel_err(to_complex(CMatrix(g.adjoint())), to_complex(g).adjoint()));
        }

        // (vi) <G1 G2> = (1/2) <G1><G2>.
        {
            const CMatrix g1 = random_complex(rows, cols, rng);
            const CMatrix g2 = random_complex(cols, cols, rng);
            report.max_violation[5] =
                std::max(report.max_violation[5],
                         rel_err(to_complex(g1 * g2), 0.5 * to_complex(g1) * to_complex(g2)));
        }

        // (vii) tr(G) = (1/2) tr(<G>).
        {
            const CMatrix g = random_complex(n, n, rng);
            const Complex lhs = g.trace();
            const Complex rhs = 0.5 * to_complex(g).trace();
            const double v = std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs));
            report.max_violation[6] = std::max(report.max_violation[6], v);
        }

        // (viii) <f(G)> = 2 f((1/2)<G>) with f = exp on diagonalizable draws.
        {
            const CMatrix g = well_conditioned_draw(n, rng, report.resamples);
            const auto f = [](Complex z) { return std::exp(z); };
            const CMatrix lhs = to_complex(matrix_function(g, f, policy));
            const CMatrix rhs = 2.0 * matrix_function(CMatrix(0.5 * to_complex(g)), f, policy);
            report.max_violation[7] = std::max(report.max_violation[7], rel_err(lhs, rhs));
        }

        // (ix) <G^*> = S_{2d} <G>^* S_{2k} with conformable block swaps.
        {
            const CMatrix g = random_complex(rows, cols, rng);
            const CMatrix lhs = to_complex(g.conjugate());
            const CMatrix rhs =
                swap_halves(dims.d) * to_complex(g).conjugate() * swap_halves(dims.k);
            report.max_violation[8] = std::max(report.max_violation[8], rel_err(lhs, rhs));
        }
    }
    return report;
}

} // namespace cqest
