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

#include "holo/rng.hpp"

#include <cmath>
#include <numbers>

namespace holo
{

namespace
{

constexpr std::uint32_t philox_m0 = 0xD2511F53u;
constexpr std::uint32_t philox_m1 = 0xCD9E8D57u;
constexpr std::uint32_t philox_w0 = 0x9E3779B9u;
constexpr std::uint32_t philox_w1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t &hi, std::uint32_t &lo) noexcept
{
    const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
    hi = static_cast<std::uint32_t>(p >> 32);
    lo = static_cast<std::uint32_t>(p);
}

} // namespace

Philox4x32::Counter Philox4x32::generate(Counter ctr, Key key) noexcept
{
    for (int round = 0; round < 10; ++round)
    {
        std::uint32_t hi0, lo0, hi1, lo1;
        mulhilo(philox_m0, ctr[0], hi0, lo0);
        mulhilo(philox_m1, ctr[2], hi1, lo1);
        ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
        key[0] += philox_w0;
        key[1] += philox_w1;
    }
    return ctr;
}

std::array<double, 2> uniform_pair(std::uint64_t seed, std::uint64_t item, std::uint32_t realization,
                                   Stream stream) noexcept
{
    const Philox4x32::Counter ctr{static_cast<std::uint32_t>(item), static_cast<std::uint32_t>(item >> 32),
                                  realization, static_cast<std::uint32_t>(stream)};
    const Philox4x32::Key key{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
    const auto x = Philox4x32::generate(ctr, key);

    constexpr double scale = 0x1.0p-53;
    const std::uint64_t a = ((static_cast<std::uint64_t>(x[1]) << 32) | x[0]) >> 11;
    const std::uint64_t b = ((static_cast<std::uint64_t>(x[3]) << 32) | x[2]) >> 11;
    return {static_cast<double>(a + 1) * scale, static_cast<double>(b) * scale};
}

std::complex<double> complex_normal(std::uint64_t seed, std::uint64_t item, std::uint32_t realization,
                                    Stream stream) noexcept
{
    const auto [u1, u2] = uniform_pair(seed, item, realization, stream);
    // sqrt(-2 ln u1) scaled by 1/sqrt(2) so each component has variance 1/2.
    const double r = std::sqrt(-std::log(u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    return {r * std::cos(theta), r * std::sin(theta)};
}

} // namespace holo
