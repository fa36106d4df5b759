// SPDX-License-Identifier: Apache-2.0
//
// holo-fading: Fourier plane-wave generator for spatially-stationary small-scale fading
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

// Counter-based random numbers. Every variate is a pure function of
// (seed, item, realization, stream), so draws do not depend on evaluation
// order or on how work is split across threads.

#include <array>
#include <complex>
#include <cstdint>

namespace holo
{

// Philox4x32 with 10 rounds (Salmon et al., SC'11).
struct Philox4x32
{
    using Counter = std::array<std::uint32_t, 4>;
    using Key = std::array<std::uint32_t, 2>;

    static Counter generate(Counter ctr, Key key) noexcept;
};

// Independent sub-streams sharing one seed.
enum class Stream : std::uint32_t
{
    coefficient_plus = 0,
    coefficient_minus = 1,
    kl_white = 2,
    coefficient_line = 3,
};

// Two uniforms from one Philox block: first in (0, 1], second in [0, 1).
std::array<double, 2> uniform_pair(std::uint64_t seed, std::uint64_t item, std::uint32_t realization,
                                   Stream stream) noexcept;

// Circularly-symmetric complex Gaussian with E|z|^2 = 1 (real and imaginary
// parts each of variance 1/2), via Box-Muller on uniform_pair.
std::complex<double> complex_normal(std::uint64_t seed, std::uint64_t item, std::uint32_t realization,
                                    Stream stream) noexcept;

} // namespace holo
