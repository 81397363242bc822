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
 * Counter-based deterministic random primitives. Outcomes depend only on the
 * (seed, counter...) key, never on evaluation order, so parallel sampling is
 * schedule-independent and runs are bit-reproducible.
 */

#pragma once

#include <cstdint>

namespace cqest {

/// SplitMix64 finalizer; a good 64-bit mixing function.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Hash of a (seed, a, b) key.
constexpr std::uint64_t mix_key(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0) {
    return splitmix64(seed ^ splitmix64(a + 0x632be59bd9b4e019ULL) ^
                      splitmix64(b + 0x9e3779b97f4a7c15ULL));
}

/// Uniform double in (0, 1), never exactly 0.
constexpr double counter_uniform(std::uint64_t key) {
    const std::uint64_t bits = splitmix64(key);
    return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
}

/// Standard normal via Box-Muller on two decorrelated uniforms.
double counter_gaussian(std::uint64_t key);

} // namespace cqest
