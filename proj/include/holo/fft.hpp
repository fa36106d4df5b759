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

#include <complex>
#include <cstddef>
#include <memory>
#include <span>

namespace holo
{

// Unnormalized in-place backward DFT (exponent +i) over a row-major
// ny x nx array, x fastest; ny = 1 gives a 1D transform. Wraps an FFTW plan.
// Planning is serialized internally; execute() is safe to call concurrently
// on distinct buffers.
class BackwardDft
{
public:
    BackwardDft(std::size_t nx, std::size_t ny = 1);
    ~BackwardDft();

    BackwardDft(const BackwardDft &) = delete;
    BackwardDft &operator=(const BackwardDft &) = delete;
    BackwardDft(BackwardDft &&) noexcept;
    BackwardDft &operator=(BackwardDft &&) noexcept;

    std::size_t nx() const noexcept { return nx_; }
    std::size_t ny() const noexcept { return ny_; }
    std::size_t size() const noexcept { return nx_ * ny_; }

    void execute(std::span<std::complex<double>> data) const;

private:
    struct Plan;
    std::size_t nx_;
    std::size_t ny_;
    std::unique_ptr<Plan> plan_;
};

} // namespace holo
