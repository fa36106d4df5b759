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

#include "holo/wavenumber.hpp"

#include "holo/errors.hpp"
#include "holo/log.hpp"

#include <cmath>
#include <sstream>
#include <string>

namespace holo
{

Wavelength::Wavelength(double lambda) : lambda_(lambda)
{
    if (!(lambda > 0.0) || !std::isfinite(lambda))
        throw InvalidArgument("wavelength must be positive and finite");
}

bool in_disk(WavenumberPoint p, double kappa) noexcept
{
    return p.radius_sq() <= kappa * kappa * (1.0 + boundary_rel_tol);
}

double gamma(WavenumberPoint p, double kappa)
{
    if (!(kappa > 0.0))
        throw InvalidArgument("kappa must be positive");
    if (!in_disk(p, kappa))
    {
        std::ostringstream os;
        os << "wavenumber (" << p.kx << ", " << p.ky << ") lies outside the disk of radius " << kappa;
        throw OutOfDisk(os.str());
    }
    const double g2 = kappa * kappa - p.radius_sq();
    return g2 > 0.0 ? std::sqrt(g2) : 0.0;
}

namespace
{

// (l lambda / Lx)^2 + (m lambda / Ly)^2
double ellipse_radius_sq(LatticeIndex idx, double lx, double ly, double lambda) noexcept
{
    const double u = static_cast<double>(idx.l) * lambda / lx;
    const double v = static_cast<double>(idx.m) * lambda / ly;
    return u * u + v * v;
}

void check_aperture(double lx, double ly, Wavelength w)
{
    if (!(lx >= w.lambda() * (1.0 - boundary_rel_tol)) || !(ly >= w.lambda() * (1.0 - boundary_rel_tol)))
        throw InvalidArgument("aperture sides must be at least one wavelength");
    if (std::min(lx, ly) < 4.0 * w.lambda())
        warn("aperture side below 4 wavelengths; the plane-wave series is a coarse approximation");
}

template <class Pred>
std::vector<LatticeIndex> enumerate(double lx, double ly, Wavelength w, std::int64_t extra, Pred keep)
{
    const auto nx = static_cast<std::int64_t>(std::floor(lx / w.lambda() * (1.0 + boundary_rel_tol)));
    const auto ny = static_cast<std::int64_t>(std::floor(ly / w.lambda() * (1.0 + boundary_rel_tol)));
    std::vector<LatticeIndex> out;
    for (std::int64_t m = -ny - extra; m <= ny; ++m)
        for (std::int64_t l = -nx - extra; l <= nx; ++l)
            if (keep(LatticeIndex{l, m}))
                out.push_back({l, m});
    return out;
}

} // namespace

bool in_lattice_ellipse(LatticeIndex idx, double lx, double ly, Wavelength w) noexcept
{
    return ellipse_radius_sq(idx, lx, ly, w.lambda()) <= 1.0 + boundary_rel_tol;
}

std::vector<LatticeIndex> lattice_ellipse(double lx, double ly, Wavelength w)
{
    check_aperture(lx, ly, w);
    return enumerate(lx, ly, w, 0, [&](LatticeIndex i) { return in_lattice_ellipse(i, lx, ly, w); });
}

double gamma_lattice(LatticeIndex idx, double lx, double ly, Wavelength w)
{
    const double r2 = ellipse_radius_sq(idx, lx, ly, w.lambda());
    if (r2 > 1.0 + boundary_rel_tol)
    {
        std::ostringstream os;
        os << "lattice index (" << idx.l << ", " << idx.m << ") is outside the lattice ellipse";
        throw OutOfDisk(os.str());
    }
    return r2 < 1.0 ? w.kappa() * std::sqrt(1.0 - r2) : 0.0;
}

WavenumberPoint lattice_point(LatticeIndex idx, double lx, double ly) noexcept
{
    return {two_pi * static_cast<double>(idx.l) / lx, two_pi * static_cast<double>(idx.m) / ly};
}

bool in_coefficient_lattice(LatticeIndex idx, double lx, double ly, Wavelength w) noexcept
{
    return in_lattice_ellipse(fold(idx), lx, ly, w);
}

std::vector<LatticeIndex> coefficient_lattice(double lx, double ly, Wavelength w)
{
    check_aperture(lx, ly, w);
    return enumerate(lx, ly, w, 1, [&](LatticeIndex i) { return in_coefficient_lattice(i, lx, ly, w); });
}

double gamma_cell(LatticeIndex idx, double lx, double ly, Wavelength w)
{
    if (!in_coefficient_lattice(idx, lx, ly, w))
        throw OutOfDisk("cell (" + std::to_string(idx.l) + ", " + std::to_string(idx.m) +
                        ") is outside the coefficient lattice");
    return gamma_lattice(fold(idx), lx, ly, w);
}

} // namespace holo
