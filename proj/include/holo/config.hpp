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

// Command-line and config-file settings of the holo tool.
//
// Config file grammar, one setting per line:
//   key = value      (whitespace around key and value is ignored)
//   # comment        (full-line comments and blank lines are skipped)
// Keys are the long flag names without dashes. Flags given on the command
// line override values from the file.

#include "holo/generator.hpp"

#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace holo
{

enum class Command
{
    generate,
    variances,
    validate,
    compare_kl,
    bench,
};

struct RunConfig
{
    Command command = Command::generate;
    std::vector<double> aperture;  // Lx[,Ly[,Lz]] in wavelengths
    std::vector<double> spacing;   // dx[,dy[,dz]]
    std::vector<double> z_planes;  // optional override of the aperture's z-grid
    std::string factor = "isotropic";
    std::uint64_t seed = 0;
    std::uint32_t realizations = 1;
    std::string out;
    std::string format = "csv";
    int figure = 6;
    int threads = 0; // 0: runtime default
    VarianceMethod method = VarianceMethod::quadrature;
    double max_lag = 4.0;
    bool quick = false; // bench: smaller sweep

    // Aperture built from `aperture` and `spacing`; throws ConfigError when an
    // aperture invariant fails.
    Aperture build_aperture() const;
};

// Parses `holo <command> [flags]`. A `--config file` flag loads key=value
// defaults first. Unknown keys or flags and malformed values raise ConfigError
// naming the offending key. HOLO_THREADS supplies `threads` when neither the
// flag nor the file sets it.
RunConfig parse_config(int argc, const char *const *argv);

// Reads the key=value grammar; rejects malformed lines and duplicate keys.
std::map<std::string, std::string> read_config_file(std::istream &is);

// Usage text for --help.
std::string usage();

} // namespace holo
