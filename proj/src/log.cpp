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

#include "holo/log.hpp"

#include <atomic>
#include <iostream>
#include <mutex>

namespace holo
{

namespace
{
std::atomic<bool> g_warnings{true};
std::mutex g_mutex;
} // namespace

void warn(std::string_view msg)
{
    if (!g_warnings.load(std::memory_order_relaxed))
        return;
    std::lock_guard lock(g_mutex);
    std::cerr << "holo: warning: " << msg << '\n';
}

void set_warnings_enabled(bool enabled) noexcept { g_warnings.store(enabled, std::memory_order_relaxed); }

} // namespace holo
