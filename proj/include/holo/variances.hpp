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

// Variances of the Fourier plane-wave series coefficients of the isotropic
// channel. In 1D they follow from an arcsin telescoping formula; in 2D each
// variance is the isotropic plane-wave spectrum integrated over the
// coefficient's wavenumber cell:
//
//   sigma^2_{lm} = 1/(4 pi) * iint_{cell(l,m) & D(1)} dkx dky / sqrt(1 - kx^2 - ky^2)
//
// with the cell [l lambda/Lx, (l+1) lambda/Lx] x [m lambda/Ly, (m+1) lambda/Ly].
// Two independent evaluations are provided: adaptive quadrature in polar
// coordinates (the reference) and an elementary closed form.

#include "holo/exec.hpp"
#include "holo/wavenumber.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace holo
{

struct CoefficientVariances1D
{
    std::int64_t n = 0; // Lx / lambda
    std::vector<double> sigma_sq; // entry l + n for l = -n .. n-1

    std::int64_t l_min() const noexcept { return -n; }
    std::int64_t l_max() const noexcept { return n - 1; }
    double at(std::int64_t l) const;
};

// (1/2 pi) [asin((l+1) lambda/Lx) - asin(l lambda/Lx)] for l >= 0, mirrored by sigma^2_{-l-1} = sigma^2_l.
// Lx/lambda must be a positive integer (InvalidArgument otherwise); l outside
// [-Lx/lambda, Lx/lambda - 1] raises IndexOutOfBand.
double variance_1d(std::int64_t l, double lx, Wavelength w);

CoefficientVariances1D variances_1d(double lx, Wavelength w);

inline constexpr double default_quadrature_tol = 1e-10;

// Reference evaluation by nested adaptive quadrature in (k_phi, u) with k_r = sin u.
double variance_2d_quadrature(LatticeIndex idx, double lx, double ly, Wavelength w,
                              double tol = default_quadrature_tol);

// Closed form through the primitive of the integrand over [0, X] x [0, Y].
double variance_2d_closed_form(LatticeIndex idx, double lx, double ly, Wavelength w);

enum class VarianceMethod
{
    quadrature,
    closed_form,
};

// Variances over coefficient_lattice(Lx, Ly), with lengths stored in wavelength units.
class CoefficientVariances2D
{
public:
    CoefficientVariances2D(double lx_over_lambda, double ly_over_lambda, std::vector<LatticeIndex> indices,
                           std::vector<double> sigma_sq);

    double lx() const noexcept { return lx_; }
    double ly() const noexcept { return ly_; }
    std::size_t size() const noexcept { return indices_.size(); }
    const std::vector<LatticeIndex> &indices() const noexcept { return indices_; }
    const std::vector<double> &sigma_sq() const noexcept { return sigma_sq_; }

    std::optional<std::size_t> position(LatticeIndex idx) const noexcept;
    double at(LatticeIndex idx) const;

private:
    struct Row
    {
        std::int64_t l_first;
        std::int64_t count;
        std::size_t offset;
    };

    double lx_;
    double ly_;
    std::vector<LatticeIndex> indices_;
    std::vector<double> sigma_sq_;
    std::int64_t m_first_ = 0;
    std::vector<Row> rows_;
};

CoefficientVariances2D variances_2d(double lx, double ly, Wavelength w,
                                    VarianceMethod method = VarianceMethod::quadrature,
                                    Exec exec = Exec::parallel, double tol = default_quadrature_tol);

// Sum of 2 sigma^2 over all indices: the per-sample power E|h|^2 of the series.
double total_power(const CoefficientVariances1D &v) noexcept;
double total_power(const CoefficientVariances2D &v) noexcept;

} // namespace holo
