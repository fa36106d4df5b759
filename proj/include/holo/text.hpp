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

// Locale-independent text helpers shared by the CSV readers and writers.

#include <string>
#include <string_view>
#include <vector>

namespace holo
{

std::string_view trim(std::string_view s) noexcept;

std::vector<std::string_view> split(std::string_view s, char sep);

// Full-match parse; returns false on trailing garbage or overflow.
bool parse_double(std::string_view s, double &out) noexcept;
bool parse_u64(std::string_view s, unsigned long long &out) noexcept;

// Shortest representation that round-trips, '.' decimal separator.
std::string format_double(double v);

} // namespace holo
