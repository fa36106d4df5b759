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

// Spectral factors A_{+/-}(kx, ky) and the quantities derived from them: the
// plane-wave spectra S_{+/-} over the propagating disk and the amplitude gain
// that shapes isotropic coefficients into non-isotropic ones.

#include "holo/wavenumber.hpp"

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

namespace holo
{

// Isotropic factor of the 3D model normalized to unit power: 2 pi / sqrt(kappa).
double isotropic_factor_3d(double kappa);

// Isotropic factor of the 2D model normalized to unit power: 2 sqrt(pi).
double isotropic_factor_2d(double kappa);

enum class FactorKind
{
    isotropic_3d,
    isotropic_2d,
    tabulated,
    analytic,
};

// Samples of A_{+/-} on a polar grid over the unit disk. Radii are k_r / kappa
// in [0, 1], ascending; angles in [0, 2 pi), ascending. Values are stored
// radius-major: value[ir * angles.size() + ip].
struct PolarTable
{
    std::vector<double> radii;
    std::vector<double> angles;
    std::vector<double> a_plus;
    std::vector<double> a_minus;
};

struct DirectionalPair
{
    double plus = 0.0;
    double minus = 0.0;
};

// Nonnegative directional weights on D(kappa), immutable after construction.
// Every constructor probes the factor on a 64 x 64 polar grid and rejects
// non-finite or negative values.
class SpectralFactor
{
public:
    using Fn = std::function<double(WavenumberPoint, double kappa)>;

    static SpectralFactor isotropic_3d();
    static SpectralFactor isotropic_2d();
    static SpectralFactor analytic(Fn a_plus, Fn a_minus, std::string id = "analytic");
    static SpectralFactor tabulated(PolarTable table, std::string id = "tabulated");

    // CSV with header `k_r_over_kappa,k_phi_rad,a_plus,a_minus` holding a full
    // radius x angle tensor grid (rows in any order).
    static SpectralFactor from_csv(std::istream &in, std::string id = "tabulated");
    static SpectralFactor from_csv_file(const std::filesystem::path &path);

    FactorKind kind() const noexcept { return kind_; }
    const std::string &id() const noexcept { return id_; }

    // Values at p; points outside the disk are evaluated at their radial projection onto the rim.
    DirectionalPair evaluate(WavenumberPoint p, double kappa) const;

    double a_plus(WavenumberPoint p, double kappa) const { return evaluate(p, kappa).plus; }
    double a_minus(WavenumberPoint p, double kappa) const { return evaluate(p, kappa).minus; }

private:
    struct Table;

    SpectralFactor(FactorKind kind, std::string id) : kind_(kind), id_(std::move(id)) {}
    void probe() const;

    FactorKind kind_;
    std::string id_;
    Fn plus_;
    Fn minus_;
    std::shared_ptr<const Table> table_;
};

// Threshold on gamma / kappa below which the spectrum is treated as singular.
inline constexpr double spectrum_edge_tol = 1e-9;

// S_{+/-}(p) = A_{+/-}(p)^2 / (4 pi gamma(p)). Throws OutOfDisk outside the disk
// and BoundarySingularity when gamma / kappa < 1e-9.
DirectionalPair plane_wave_spectrum(const SpectralFactor &f, WavenumberPoint p, double kappa);

// Amplitude gain A_{+/-}(p) sqrt(kappa) / (2 pi) relative to the isotropic 3D
// factor. Throws OutOfDisk outside the disk.
DirectionalPair shaping_response(const SpectralFactor &f, WavenumberPoint p, double kappa);

} // namespace holo
