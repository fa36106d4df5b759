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

#include <gtest/gtest.h>

#include <cmath>

using namespace holo;

// Known-answer vectors of the reference Philox4x32-10 implementation.
TEST(Philox, KnownAnswers)
{
    using C = Philox4x32::Counter;
    using K = Philox4x32::Key;
    EXPECT_EQ(Philox4x32::generate(C{0, 0, 0, 0}, K{0, 0}), (C{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8}));
    EXPECT_EQ(Philox4x32::generate(C{0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, K{0xffffffff, 0xffffffff}),
              (C{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd}));
    EXPECT_EQ(Philox4x32::generate(C{0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, K{0xa4093822, 0x299f31d0}),
              (C{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1}));
}

TEST(Uniform, Ranges)
{
    for (std::uint64_t i = 0; i < 100000; ++i)
    {
        const auto [a, b] = uniform_pair(9, i, 0, Stream::coefficient_plus);
        ASSERT_GT(a, 0.0);
        ASSERT_LE(a, 1.0);
        ASSERT_GE(b, 0.0);
        ASSERT_LT(b, 1.0);
    }
}

TEST(ComplexNormal, Deterministic)
{
    EXPECT_EQ(complex_normal(42, 7, 3, Stream::kl_white), complex_normal(42, 7, 3, Stream::kl_white));
    EXPECT_NE(complex_normal(42, 7, 3, Stream::kl_white), complex_normal(43, 7, 3, Stream::kl_white));
    EXPECT_NE(complex_normal(42, 7, 3, Stream::kl_white), complex_normal(42, 7, 4, Stream::kl_white));
    EXPECT_NE(complex_normal(42, 7, 3, Stream::kl_white), complex_normal(42, 7, 3, Stream::coefficient_plus));
}

TEST(ComplexNormal, Moments)
{
    const int n = 200000;
    double re = 0, im = 0, re2 = 0, im2 = 0, reim = 0, re4 = 0;
    for (int i = 0; i < n; ++i)
    {
        const auto z = complex_normal(1, static_cast<std::uint64_t>(i), 0, Stream::coefficient_plus);
        re += z.real();
        im += z.imag();
        re2 += z.real() * z.real();
        im2 += z.imag() * z.imag();
        reim += z.real() * z.imag();
        re4 += std::pow(z.real(), 4);
    }
    re /= n, im /= n, re2 /= n, im2 /= n, reim /= n, re4 /= n;
    // Standard errors are about 1.6e-3 for means and variances.
    EXPECT_NEAR(re, 0.0, 0.008);
    EXPECT_NEAR(im, 0.0, 0.008);
    EXPECT_NEAR(re2, 0.5, 0.008);
    EXPECT_NEAR(im2, 0.5, 0.008);
    EXPECT_NEAR(reim, 0.0, 0.008);
    EXPECT_NEAR(re4 / (re2 * re2) - 3.0, 0.0, 0.06);
}

TEST(ComplexNormal, StreamsUncorrelated)
{
    const int n = 100000;
    std::complex<double> c{};
    for (int i = 0; i < n; ++i)
        c += std::conj(complex_normal(5, static_cast<std::uint64_t>(i), 0, Stream::coefficient_plus)) *
             complex_normal(5, static_cast<std::uint64_t>(i), 0, Stream::coefficient_minus);
    EXPECT_LT(std::abs(c) / n, 4.0 / std::sqrt(double(n)));
}
