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

#pragma once

#include <stdexcept>
#include <string>

namespace cqest {

/// Base class for all toolkit errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Non-square input, size mismatch, or odd dimension where an even one is required.
struct DimensionError : Error {
    using Error::Error;
};

/// Input fails a Hermiticity (or real-symmetry) tolerance check.
struct NotHermitianError : Error {
    using Error::Error;
};

/// Eigenvector matrix too ill-conditioned for a spectral matrix function.
struct DefectiveMatrixError : Error {
    using Error::Error;
};

/// An iterative decomposition failed to converge.
struct NumericalError : Error {
    using Error::Error;
};

/// State rank too low for the requested logarithmic-derivative family.
struct RankDeficientError : Error {
    using Error::Error;
};

/// A Fisher matrix (or one of its blocks) is singular; carries the block name.
struct SingularMatrixError : Error {
    using Error::Error;
};

/// Invalid scalar argument (mixing weight, Bloch overflow, trial counts, ...).
struct InvalidArgumentError : Error {
    using Error::Error;
};

/// Conjugate-extension vector whose halves are not conjugates of each other.
struct ConjugateConsistencyError : Error {
    using Error::Error;
};

/// A user-supplied model could not be evaluated.
struct EvaluationError : Error {
    using Error::Error;
};

/// The linear (z, z*) -> quadrature-means encoding is not invertible.
struct EncodingError : Error {
    using Error::Error;
};

/// Invalid run configuration (schema violation, unknown field, bad flag).
struct ConfigError : Error {
    using Error::Error;
};

} // namespace cqest
