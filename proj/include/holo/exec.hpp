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

#include <cstddef>
#include <exception>
#include <mutex>

namespace holo
{

// Selects the serial reference kernel or its OpenMP counterpart.
enum class Exec
{
    serial,
    parallel,
};

// Caps OpenMP worker threads; n <= 0 restores the runtime default.
void set_thread_count(int n);
int thread_count();

// Collects the first exception thrown inside an OpenMP region so it can be rethrown outside.
class ExceptionSink
{
public:
    template <class F>
    void run(F &&f) noexcept
    {
        try
        {
            f();
        }
        catch (...)
        {
            std::lock_guard lock(mutex_);
            if (!first_)
                first_ = std::current_exception();
        }
    }

    void rethrow() const
    {
        if (first_)
            std::rethrow_exception(first_);
    }

private:
    std::mutex mutex_;
    std::exception_ptr first_;
};

} // namespace holo
