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

#include "holo/fft.hpp"

#include "holo/errors.hpp"

#include <fftw3.h>

#include <mutex>
#include <vector>

namespace holo
{

namespace
{
// FFTW's planner is not re-entrant.
std::mutex &planner_mutex()
{
    static std::mutex m;
    return m;
}
} // namespace

struct BackwardDft::Plan
{
    fftw_plan handle = nullptr;

    ~Plan()
    {
        if (handle)
        {
            std::lock_guard lock(planner_mutex());
            fftw_destroy_plan(handle);
        }
    }
};

BackwardDft::BackwardDft(std::size_t nx, std::size_t ny) : nx_(nx), ny_(ny), plan_(std::make_unique<Plan>())
{
    if (nx == 0 || ny == 0)
        throw InvalidArgument("DFT size must be positive");
    std::vector<std::complex<double>> scratch(nx * ny);
    auto *buf = reinterpret_cast<fftw_complex *>(scratch.data());
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;

    std::lock_guard lock(planner_mutex());
    if (ny == 1)
        plan_->handle = fftw_plan_dft_1d(static_cast<int>(nx), buf, buf, FFTW_BACKWARD, flags);
    else
        plan_->handle = fftw_plan_dft_2d(static_cast<int>(ny), static_cast<int>(nx), buf, buf, FFTW_BACKWARD, flags);
    if (!plan_->handle)
        throw Error("FFTW failed to create a plan");
}

BackwardDft::~BackwardDft() = default;
BackwardDft::BackwardDft(BackwardDft &&) noexcept = default;
BackwardDft &BackwardDft::operator=(BackwardDft &&) noexcept = default;

void BackwardDft::execute(std::span<std::complex<double>> data) const
{
    if (data.size() != size())
        throw InvalidArgument("DFT buffer size mismatch");
    auto *buf = reinterpret_cast<fftw_complex *>(data.data());
    fftw_execute_dft(plan_->handle, buf, buf);
}

} // namespace holo
