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

// Sampling of the Fourier plane-wave series over linear, planar and
// volumetric apertures:
//
//   h(x_n, y_j, z_k) = sum_{(l,m)} H_{lm}(z_k) exp(i 2 pi (l n / Nx + m j / Ny)),
//   H_{lm}(z) = H+_{lm} exp(i gamma_{lm} z) + H-_{lm} exp(-i gamma_{lm} z),
//
// with H+/- ~ CN(0, sigma^2_{lm}) shaped by the spectral factor. The sum is
// evaluated with one unnormalized 2D inverse FFT per z-plane. All lengths are
// in wavelength units.

#include "holo/fft.hpp"
#include "holo/spectrum.hpp"
#include "holo/variances.hpp"

#include <complex>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <span>
#include <vector>

namespace holo
{

using cplx = std::complex<double>;

// Rectangular aperture and its uniform sampling grid, in wavelength units.
// Inactive axes have zero length and spacing.
struct Aperture
{
    double lx = 0.0, ly = 0.0, lz = 0.0;
    double dx = 0.0, dy = 0.0, dz = 0.0;

    static Aperture linear(double lx, double dx);
    static Aperture planar(double lx, double ly, double dx, double dy);
    static Aperture volumetric(double lx, double ly, double lz, double dx, double dy, double dz);

    int dimension() const noexcept;
    std::size_t nx() const noexcept;
    std::size_t ny() const noexcept;
    std::size_t nz() const noexcept;
    std::size_t points_per_plane() const noexcept { return nx() * ny(); }

    // z_k = k dz for k = 0 .. Nz-1; {0} for linear and planar apertures.
    std::vector<double> z_planes() const;

    // Throws InvalidArgument / GridTooCoarse when an aperture invariant fails:
    // half-wavelength sampling on every active in-plane axis, even Nx and Ny,
    // Lz < min(Lx, Ly), integer Lx/lambda for linear apertures.
    void validate() const;
};

struct CoefficientDraw
{
    std::shared_ptr<const CoefficientVariances2D> table;
    std::vector<cplx> plus;
    std::vector<cplx> minus;
    std::uint64_t seed = 0;
    std::uint32_t realization = 0;
};

// Independent CN(0, sigma^2) draws for H+ and H- at every index of the table,
// keyed by (seed, table position, realization).
CoefficientDraw draw_coefficients(std::shared_ptr<const CoefficientVariances2D> table, std::uint64_t seed,
                                  std::uint32_t realization = 0);

// Multiplies H+/- at (l, m) by shaping_response at (2 pi l/Lx, 2 pi m/Ly);
// mirrored cells whose point lies outside the disk use its projection onto the rim.
CoefficientDraw shape_coefficients(CoefficientDraw draw, const SpectralFactor &f);

// H(z) = H+ e^{i gamma z} + H- e^{-i gamma z}; throws MigrationRange when |z| >= min(Lx, Ly).
std::vector<cplx> migrate(const CoefficientDraw &draw, double z);
void migrate_into(const CoefficientDraw &draw, std::span<const double> gammas, double z, std::span<cplx> out);

// Per-index gamma_cell of a table, in units where kappa = 2 pi.
std::vector<double> lattice_gammas(const CoefficientVariances2D &table);

// Evaluates the series on the Nx x Ny grid n = -Nx/2 .. Nx/2-1 (x fastest).
// Lattice index l goes to FFT bin l mod Nx; the output is rotated by half a
// grid so that array position p holds sample n = p - Nx/2. Throws
// GridTooCoarse unless Nx >= 2 Lx and Ny >= 2 Ly (in wavelengths) and both are even.
std::vector<cplx> synthesize_plane(std::span<const cplx> hz, const CoefficientVariances2D &table, std::size_t nx,
                                   std::size_t ny);

// Same for a line: h(x_n) = sum_{l=l_first}^{l_first+len-1} H_l exp(i 2 pi l n / N).
std::vector<cplx> synthesize_line(std::span<const cplx> h, std::int64_t l_first, std::size_t n);

struct FieldRealization
{
    Aperture aperture;
    std::size_t nx = 0, ny = 0, nz = 0;
    std::vector<double> z_planes;
    std::vector<cplx> samples; // nz x ny x nx, x fastest
    std::uint64_t seed = 0;
    std::uint32_t realization = 0;
    std::string factor_id;

    // n, j, k are array positions (0-based), not the centered sample indices.
    const cplx &at(std::size_t n, std::size_t j = 0, std::size_t k = 0) const
    {
        return samples[(k * ny + j) * nx + n];
    }
};

// Reusable generator for one aperture and spectral factor: the variance table,
// lattice geometry and FFT plan are built once, realizations are drawn on demand.
// realize_into() is const and safe to call concurrently with distinct workspaces.
class FieldGenerator
{
public:
    struct Workspace
    {
        CoefficientDraw draw;
        std::vector<cplx> hz;
    };

    struct Options
    {
        // Observation planes; empty means the aperture's own z-grid. Linear
        // apertures only support {0}.
        std::vector<double> z_planes;
        VarianceMethod method = VarianceMethod::quadrature;
        Exec table_exec = Exec::parallel;
    };

    FieldGenerator(const Aperture &aperture, SpectralFactor factor, Options options);
    FieldGenerator(const Aperture &aperture, SpectralFactor factor) : FieldGenerator(aperture, std::move(factor), Options{}) {}

    const Aperture &aperture() const noexcept { return aperture_; }
    const SpectralFactor &factor() const noexcept { return factor_; }
    const std::vector<double> &z_planes() const noexcept { return z_planes_; }
    std::size_t samples_per_realization() const noexcept { return aperture_.points_per_plane() * z_planes_.size(); }

    // Coefficient variance tables; exactly one is set depending on the aperture dimension.
    std::shared_ptr<const CoefficientVariances2D> table_2d() const noexcept { return table2d_; }
    const CoefficientVariances1D *table_1d() const noexcept { return table1d_ ? &*table1d_ : nullptr; }

    // E|h|^2 implied by the variance table (before shaping).
    double total_power() const noexcept;

    FieldRealization realize(std::uint64_t seed, std::uint32_t realization = 0) const;
    void realize_into(std::uint64_t seed, std::uint32_t realization, std::span<cplx> out, Workspace &ws) const;

private:
    void realize_line(std::uint64_t seed, std::uint32_t realization, std::span<cplx> out) const;

    Aperture aperture_;
    SpectralFactor factor_;
    std::vector<double> z_planes_;
    std::shared_ptr<const CoefficientVariances2D> table2d_;
    std::optional<CoefficientVariances1D> table1d_;
    std::vector<double> gammas_;
    std::vector<DirectionalPair> gains_; // empty for the isotropic factor
    std::vector<std::size_t> bins_; // flattened FFT bin per lattice index
    BackwardDft dft_;
};

// One-shot convenience: draw, shape, migrate to every z-plane and synthesize.
FieldRealization generate(const Aperture &aperture, const SpectralFactor &f, std::uint64_t seed,
                          std::vector<double> z_planes = {}, std::uint32_t realization = 0);

} // namespace holo
