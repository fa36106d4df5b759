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

// Wall-time scaling of the FFT generator and of the dense KL sampler.

#include "holo/exec.hpp"

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace holo
{

struct BenchPoint
{
    std::size_t points = 0;          // samples per realization
    double seconds = 0.0;            // per realization
    double setup_seconds = 0.0;      // table / eigendecomposition, reported only
};

struct BenchOptions
{
    std::vector<std::size_t> generator_sides{64, 128, 256, 512}; // Nx = Ny at spacing 1/4
    std::vector<std::size_t> kl_sizes{128, 256, 512, 1024};      // line grids at spacing 1/16
    double min_seconds = 0.2;                                    // timed work per size
    Exec exec = Exec::parallel;
};

struct BenchReport
{
    std::vector<BenchPoint> generator;
    std::vector<BenchPoint> kl;
    double generator_exponent = 0.0;
    double kl_exponent = 0.0;
    std::vector<std::string> failures;

    bool pass() const noexcept { return failures.empty(); }
};

// Least-squares slope of log(seconds) against log(points).
double fit_exponent(std::span<const BenchPoint> pts);

// Pass iff the generator exponent is in [0.9, 1.3] and the KL exponent exceeds 1.8.
BenchReport run_bench(const BenchOptions &opts);

} // namespace holo
