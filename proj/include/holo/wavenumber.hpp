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

// Wavenumber-domain geometry: the propagating disk D(kappa), the vertical
// wavenumber gamma(kx, ky) and the lattice ellipse of Fourier harmonics that a
// finite rectangular aperture can resolve.
//
// Lengths handed to this module may be in any unit as long as they share the
// unit of the Wavelength. The rest of the library works in wavelength units
// (lambda = 1, kappa = 2*pi).

#include <cstdint>
#include <numbers>
#include <vector>

namespace holo
{

inline constexpr double two_pi = 2.0 * std::numbers::pi;

// Relative slack used when testing membership of boundary points.
inline constexpr double boundary_rel_tol = 1e-12;

class Wavelength
{
public:
    explicit Wavelength(double lambda);

    double lambda() const noexcept { return lambda_; }
    double kappa() const noexcept { return two_pi / lambda_; }

    static Wavelength unit() { return Wavelength(1.0); }

private:
    double lambda_;
};

struct WavenumberPoint
{
    double kx = 0.0;
    double ky = 0.0;

    double radius_sq() const noexcept { return kx * kx + ky * ky; }
};

struct LatticeIndex
{
    std::int64_t l = 0;
    std::int64_t m = 0;

    friend bool operator==(const LatticeIndex &, const LatticeIndex &) = default;
};

// sqrt(kappa^2 - kx^2 - ky^2). Throws OutOfDisk for evanescent points.
double gamma(WavenumberPoint p, double kappa);

// True when p lies in the closed disk of radius kappa (with boundary slack).
bool in_disk(WavenumberPoint p, double kappa) noexcept;

// Integer pairs with (l lambda / Lx)^2 + (m lambda / Ly)^2 <= 1, m outer, l inner, both ascending.
// Boundary pairs are included. Throws InvalidArgument when Lx or Ly is below lambda.
std::vector<LatticeIndex> lattice_ellipse(double lx, double ly, Wavelength w);

bool in_lattice_ellipse(LatticeIndex idx, double lx, double ly, Wavelength w) noexcept;

// kappa * sqrt(1 - (l lambda/Lx)^2 - (m lambda/Ly)^2); exactly 0 on the ellipse boundary.
double gamma_lattice(LatticeIndex idx, double lx, double ly, Wavelength w);

// Wavenumber point (2 pi l / Lx, 2 pi m / Ly) of a lattice index.
WavenumberPoint lattice_point(LatticeIndex idx, double lx, double ly) noexcept;

// --- Coefficient cells ---------------------------------------------------
//
// Harmonic (l, m) of the plane-wave series owns the wavenumber cell
// [l, l+1] x [m, m+1] (in units of 2 pi / L). The ellipse test above looks at
// the cell's lower-left corner, which is the corner nearest broadside only in
// the first quadrant. Cells in the other quadrants are obtained by mirroring:
// the cell of (-l-1, m) is the reflection of the cell of (l, m) across the
// ky-axis, and likewise in m. `fold_index` maps any index onto its
// first-quadrant representative.

constexpr std::int64_t fold_index(std::int64_t i) noexcept { return i >= 0 ? i : -i - 1; }

constexpr LatticeIndex fold(LatticeIndex idx) noexcept { return {fold_index(idx.l), fold_index(idx.m)}; }

// All cells whose first-quadrant representative lies in the lattice ellipse.
// Same ordering as lattice_ellipse. For integer L/lambda = n this is the
// mirror-closed set inside {-n-1 .. n}^2.
std::vector<LatticeIndex> coefficient_lattice(double lx, double ly, Wavelength w);

bool in_coefficient_lattice(LatticeIndex idx, double lx, double ly, Wavelength w) noexcept;

// gamma_lattice of the folded representative; invariant under the mirror maps.
double gamma_cell(LatticeIndex idx, double lx, double ly, Wavelength w);

} // namespace holo
