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

#include "holo/generator.hpp"

#include "holo/errors.hpp"
#include "holo/rng.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace holo
{

namespace
{

constexpr double axis_tol = 1e-9;

std::size_t samples_along(double length, double spacing) noexcept
{
    if (!(length > 0.0) || !(spacing > 0.0))
        return 1;
    return static_cast<std::size_t>(std::ceil(length / spacing - axis_tol));
}

std::size_t wrap(std::int64_t i, std::size_t n) noexcept
{
    const auto nn = static_cast<std::int64_t>(n);
    return static_cast<std::size_t>(((i % nn) + nn) % nn);
}

// (-1)^i; multiplying bin coefficients by it rotates the DFT output by half a grid.
double alternating_sign(std::int64_t i) noexcept { return (i & 1) != 0 ? -1.0 : 1.0; }

void check_axis(const char *name, double length, double spacing)
{
    if (!(length >= 1.0 - axis_tol) || !std::isfinite(length))
        throw InvalidArgument(std::string("aperture side L") + name + " must be at least one wavelength");
    if (!(spacing > 0.0) || !std::isfinite(spacing))
        throw InvalidArgument(std::string("grid spacing d") + name + " must be positive");
    if (spacing > 0.5 * (1.0 + 1e-12))
        throw GridTooCoarse(std::string("grid spacing d") + name +
                            " exceeds the half-wavelength Nyquist limit (spacing <= lambda/2)");
    if (samples_along(length, spacing) % 2 != 0)
        throw GridTooCoarse(std::string("number of samples along ") + name + " must be even");
}

void check_representable(std::size_t n, double length, const char *name)
{
    if (n % 2 != 0 || static_cast<double>(n) < 2.0 * length - axis_tol)
        throw GridTooCoarse(std::string("grid along ") + name + " has " + std::to_string(n) +
                            " points; need an even count of at least 2 L/lambda");
}

std::vector<DirectionalPair> cell_gains(const CoefficientVariances2D &table, const SpectralFactor &f)
{
    std::vector<DirectionalPair> gains(table.size(), DirectionalPair{1.0, 1.0});
    if (f.kind() == FactorKind::isotropic_3d)
        return gains;
    for (std::size_t i = 0; i < table.size(); ++i)
    {
        auto p = lattice_point(table.indices()[i], table.lx(), table.ly());
        const double r = std::sqrt(p.radius_sq());
        if (r > two_pi)
        {
            p.kx *= two_pi / r;
            p.ky *= two_pi / r;
        }
        gains[i] = shaping_response(f, p, two_pi);
    }
    return gains;
}

void draw_into(const CoefficientVariances2D &table, std::uint64_t seed, std::uint32_t realization,
               std::vector<cplx> &plus, std::vector<cplx> &minus)
{
    const auto &var = table.sigma_sq();
    plus.resize(var.size());
    minus.resize(var.size());
    for (std::size_t i = 0; i < var.size(); ++i)
    {
        const double sigma = std::sqrt(var[i]);
        plus[i] = sigma * complex_normal(seed, i, realization, Stream::coefficient_plus);
        minus[i] = sigma * complex_normal(seed, i, realization, Stream::coefficient_minus);
    }
}

} // namespace

// ---- Aperture ------------------------------------------------------------

Aperture Aperture::linear(double lx, double dx) { return Aperture{lx, 0.0, 0.0, dx, 0.0, 0.0}; }

Aperture Aperture::planar(double lx, double ly, double dx, double dy) { return Aperture{lx, ly, 0.0, dx, dy, 0.0}; }

Aperture Aperture::volumetric(double lx, double ly, double lz, double dx, double dy, double dz)
{
    return Aperture{lx, ly, lz, dx, dy, dz};
}

int Aperture::dimension() const noexcept
{
    if (!(ly > 0.0))
        return 1;
    if (!(lz > 0.0))
        return 2;
    return 3;
}

std::size_t Aperture::nx() const noexcept { return samples_along(lx, dx); }

std::size_t Aperture::ny() const noexcept { return dimension() >= 2 ? samples_along(ly, dy) : 1; }

std::size_t Aperture::nz() const noexcept { return dimension() == 3 ? samples_along(lz, dz) : 1; }

std::vector<double> Aperture::z_planes() const
{
    std::vector<double> z(nz(), 0.0);
    for (std::size_t k = 0; k < z.size(); ++k)
        z[k] = static_cast<double>(k) * dz;
    return z;
}

void Aperture::validate() const
{
    check_axis("x", lx, dx);
    const int dim = dimension();
    if (dim == 1)
    {
        if (ly != 0.0 || lz != 0.0)
            throw InvalidArgument("linear aperture must have Ly = Lz = 0");
        const double n = std::round(lx);
        if (std::abs(lx - n) > axis_tol * std::max(1.0, n))
            throw InvalidArgument("linear aperture needs an integer Lx / lambda");
        return;
    }
    check_axis("y", ly, dy);
    if (dim == 3)
    {
        if (!(dz > 0.0))
            throw InvalidArgument("grid spacing dz must be positive");
        if (!(lz < std::min(lx, ly)))
            throw MigrationRange("volumetric aperture needs Lz < min(Lx, Ly)");
    }
}

// ---- pipeline stages -----------------------------------------------------

CoefficientDraw draw_coefficients(std::shared_ptr<const CoefficientVariances2D> table, std::uint64_t seed,
                                  std::uint32_t realization)
{
    if (!table)
        throw InvalidArgument("draw_coefficients needs a variance table");
    CoefficientDraw d;
    draw_into(*table, seed, realization, d.plus, d.minus);
    d.table = std::move(table);
    d.seed = seed;
    d.realization = realization;
    return d;
}

CoefficientDraw shape_coefficients(CoefficientDraw draw, const SpectralFactor &f)
{
    if (!draw.table)
        throw InvalidArgument("coefficient draw has no variance table");
    const auto gains = cell_gains(*draw.table, f);
    for (std::size_t i = 0; i < gains.size(); ++i)
    {
        draw.plus[i] *= gains[i].plus;
        draw.minus[i] *= gains[i].minus;
    }
    return draw;
}

std::vector<double> lattice_gammas(const CoefficientVariances2D &table)
{
    std::vector<double> g(table.size());
    const auto w = Wavelength::unit();
    for (std::size_t i = 0; i < g.size(); ++i)
        g[i] = gamma_cell(table.indices()[i], table.lx(), table.ly(), w);
    return g;
}

void migrate_into(const CoefficientDraw &draw, std::span<const double> gammas, double z, std::span<cplx> out)
{
    if (!draw.table)
        throw InvalidArgument("coefficient draw has no variance table");
    if (!(std::abs(z) < std::min(draw.table->lx(), draw.table->ly())))
        throw MigrationRange("migration distance |z| = " + std::to_string(std::abs(z)) +
                             " must be below min(Lx, Ly)");
    if (gammas.size() != draw.plus.size() || out.size() != draw.plus.size())
        throw InvalidArgument("migration buffers do not match the coefficient count");
    for (std::size_t i = 0; i < out.size(); ++i)
    {
        if (z == 0.0)
        {
            out[i] = draw.plus[i] + draw.minus[i];
            continue;
        }
        const cplx up = std::polar(1.0, gammas[i] * z);
        out[i] = draw.plus[i] * up + draw.minus[i] * std::conj(up);
    }
}

std::vector<cplx> migrate(const CoefficientDraw &draw, double z)
{
    if (!draw.table)
        throw InvalidArgument("coefficient draw has no variance table");
    std::vector<cplx> out(draw.plus.size());
    migrate_into(draw, lattice_gammas(*draw.table), z, out);
    return out;
}

std::vector<cplx> synthesize_plane(std::span<const cplx> hz, const CoefficientVariances2D &table, std::size_t nx,
                                   std::size_t ny)
{
    check_representable(nx, table.lx(), "x");
    check_representable(ny, table.ly(), "y");
    if (hz.size() != table.size())
        throw InvalidArgument("coefficient count does not match the variance table");
    std::vector<cplx> grid(nx * ny, cplx{});
    for (std::size_t i = 0; i < hz.size(); ++i)
    {
        const auto idx = table.indices()[i];
        grid[wrap(idx.m, ny) * nx + wrap(idx.l, nx)] += alternating_sign(idx.l + idx.m) * hz[i];
    }
    BackwardDft(nx, ny).execute(grid);
    return grid;
}

std::vector<cplx> synthesize_line(std::span<const cplx> h, std::int64_t l_first, std::size_t n)
{
    if (n == 0 || n % 2 != 0)
        throw GridTooCoarse("line grid needs an even, positive number of points");
    if (h.size() > n)
        throw GridTooCoarse("line grid has " + std::to_string(n) + " points for " + std::to_string(h.size()) +
                            " harmonics");
    std::vector<cplx> grid(n, cplx{});
    for (std::size_t i = 0; i < h.size(); ++i)
    {
        const std::int64_t l = l_first + static_cast<std::int64_t>(i);
        grid[wrap(l, n)] += alternating_sign(l) * h[i];
    }
    BackwardDft(n).execute(grid);
    return grid;
}

// ---- FieldGenerator ------------------------------------------------------

namespace
{
const Aperture &validated(const Aperture &a)
{
    a.validate();
    return a;
}
} // namespace

FieldGenerator::FieldGenerator(const Aperture &aperture, SpectralFactor factor, Options options)
    : aperture_(validated(aperture)), factor_(std::move(factor)),
      z_planes_(options.z_planes.empty() ? aperture.z_planes() : std::move(options.z_planes)),
      dft_(aperture.nx(), aperture.dimension() == 1 ? 1 : aperture.ny())
{
    const auto w = Wavelength::unit();
    if (aperture_.dimension() == 1)
    {
        if (z_planes_.size() != 1 || z_planes_.front() != 0.0)
            throw InvalidArgument("linear apertures are observed on the line y = z = 0 only");
        table1d_ = variances_1d(aperture_.lx, w);
        if (static_cast<double>(aperture_.nx()) < 2.0 * aperture_.lx - axis_tol)
            throw GridTooCoarse("line grid cannot represent every harmonic");
        return;
    }

    const double migration_limit = std::min(aperture_.lx, aperture_.ly);
    for (double z : z_planes_)
        if (!(std::abs(z) < migration_limit))
            throw MigrationRange("z-plane " + std::to_string(z) + " is not below min(Lx, Ly)");

    table2d_ = std::make_shared<const CoefficientVariances2D>(
        variances_2d(aperture_.lx, aperture_.ly, w, options.method, options.table_exec));
    check_representable(aperture_.nx(), table2d_->lx(), "x");
    check_representable(aperture_.ny(), table2d_->ly(), "y");
    gammas_ = lattice_gammas(*table2d_);
    if (factor_.kind() != FactorKind::isotropic_3d)
        gains_ = cell_gains(*table2d_, factor_);
    bins_.resize(table2d_->size());
    for (std::size_t i = 0; i < bins_.size(); ++i)
    {
        const auto idx = table2d_->indices()[i];
        bins_[i] = wrap(idx.m, aperture_.ny()) * aperture_.nx() + wrap(idx.l, aperture_.nx());
    }
}

double FieldGenerator::total_power() const noexcept
{
    return table2d_ ? holo::total_power(*table2d_) : holo::total_power(*table1d_);
}

void FieldGenerator::realize_line(std::uint64_t seed, std::uint32_t realization, std::span<cplx> out) const
{
    const auto &t = *table1d_;
    const std::size_t n = aperture_.nx();
    const bool isotropic = factor_.kind() == FactorKind::isotropic_3d;
    std::fill(out.begin(), out.end(), cplx{});
    for (std::int64_t l = t.l_min(); l <= t.l_max(); ++l)
    {
        const auto item = static_cast<std::uint64_t>(l - t.l_min());
        const double var = t.sigma_sq[item];
        cplx h;
        if (isotropic)
            h = std::sqrt(2.0 * var) * complex_normal(seed, item, realization, Stream::coefficient_line);
        else
        {
            // Two independent halves, each shaped by its directional gain on the kx-axis.
            const auto g = shaping_response(factor_, {two_pi * static_cast<double>(l) / aperture_.lx, 0.0}, two_pi);
            const double sigma = std::sqrt(var);
            h = g.plus * sigma * complex_normal(seed, item, realization, Stream::coefficient_plus) +
                g.minus * sigma * complex_normal(seed, item, realization, Stream::coefficient_minus);
        }
        out[wrap(l, n)] += alternating_sign(l) * h;
    }
    dft_.execute(out);
}

void FieldGenerator::realize_into(std::uint64_t seed, std::uint32_t realization, std::span<cplx> out,
                                  Workspace &ws) const
{
    if (out.size() != samples_per_realization())
        throw InvalidArgument("output buffer does not match the realization size");
    if (table1d_)
    {
        realize_line(seed, realization, out);
        return;
    }

    const auto &table = *table2d_;
    draw_into(table, seed, realization, ws.draw.plus, ws.draw.minus);
    ws.draw.table = table2d_;
    ws.draw.seed = seed;
    ws.draw.realization = realization;
    for (std::size_t i = 0; i < gains_.size(); ++i)
    {
        ws.draw.plus[i] *= gains_[i].plus;
        ws.draw.minus[i] *= gains_[i].minus;
    }

    const std::size_t plane = aperture_.points_per_plane();
    ws.hz.resize(table.size());
    for (std::size_t k = 0; k < z_planes_.size(); ++k)
    {
        migrate_into(ws.draw, gammas_, z_planes_[k], ws.hz);
        auto grid = out.subspan(k * plane, plane);
        std::fill(grid.begin(), grid.end(), cplx{});
        for (std::size_t i = 0; i < bins_.size(); ++i)
        {
            const auto idx = table.indices()[i];
            grid[bins_[i]] += alternating_sign(idx.l + idx.m) * ws.hz[i];
        }
        dft_.execute(grid);
    }
}

FieldRealization FieldGenerator::realize(std::uint64_t seed, std::uint32_t realization) const
{
    FieldRealization f;
    f.aperture = aperture_;
    f.nx = aperture_.nx();
    f.ny = aperture_.ny();
    f.nz = z_planes_.size();
    f.z_planes = z_planes_;
    f.samples.resize(samples_per_realization());
    f.seed = seed;
    f.realization = realization;
    f.factor_id = factor_.id();
    Workspace ws;
    realize_into(seed, realization, f.samples, ws);
    return f;
}

FieldRealization generate(const Aperture &aperture, const SpectralFactor &f, std::uint64_t seed,
                          std::vector<double> z_planes, std::uint32_t realization)
{
    FieldGenerator::Options opts;
    opts.z_planes = std::move(z_planes);
    return FieldGenerator(aperture, f, std::move(opts)).realize(seed, realization);
}

} // namespace holo
