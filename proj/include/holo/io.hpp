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

// Output formats for the command-line tool. All numbers are written with
// std::to_chars so files do not depend on the C locale.

#include "holo/generator.hpp"
#include "holo/validation.hpp"
#include "holo/variances.hpp"

#include <complex>
#include <cstdint>
#include <istream>
#include <ostream>
#include <span>
#include <vector>

namespace holo
{

// Binary realization stream: little-endian header
//   "HOLO", version u32, Nx u32, Ny u32, Nz u32, M u32
// followed by M * Nz * Ny * Nx (re, im) float64 pairs, x fastest.
inline constexpr std::uint32_t binary_version = 1;

class BinaryWriter
{
public:
    BinaryWriter(std::ostream &os, std::uint32_t nx, std::uint32_t ny, std::uint32_t nz, std::uint32_t m);
    void write(std::span<const std::complex<double>> samples);
    std::uint32_t written() const noexcept { return written_; }

private:
    std::ostream &os_;
    std::size_t per_realization_;
    std::uint32_t m_;
    std::uint32_t written_ = 0;
};

struct BinaryData
{
    std::uint32_t nx = 0, ny = 0, nz = 0, m = 0;
    std::vector<std::complex<double>> samples;
};

BinaryData read_binary(std::istream &is);

// realization,n,j,k,x,y,z,re,im with positions in wavelength units.
void write_csv_header(std::ostream &os);
void write_csv_rows(std::ostream &os, const FieldRealization &f);

// l,m,sigma_sq rows (m omitted for 1D) and a final "# total_power=<v>" line.
void write_variances_csv(std::ostream &os, const CoefficientVariances2D &t);
void write_variances_csv(std::ostream &os, const CoefficientVariances1D &t);

void write_curve_csv(std::ostream &os, const FigureReport &rep);
void write_report_json(std::ostream &os, const FigureReport &rep);

void write_compare_kl_csv(std::ostream &os, std::span<const KlComparisonRow> rows);

} // namespace holo
