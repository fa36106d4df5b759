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

// Closed-form isotropic (Clarke) autocorrelations and the dense
// Karhunen-Loeve sampler h = C^{1/2} e used as the reference method.

#include "holo/generator.hpp"
#include "holo/wavenumber.hpp"

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <span>
#include <variant>
#include <vector>

namespace holo
{

// Bessel J0: ascending series (extended precision) for |z| <= 12, Hankel
// asymptotic expansion truncated at its smallest term beyond.
double bessel_j0(double z);

// sin(pi x) / (pi x), exactly 0 at nonzero integers and 1 at 0.
double sinc_pi(double x) noexcept;

// sinc(2r / lambda) = sin(kappa r) / (kappa r): isotropic 3D scattering.
double clarke_acf_3d(double r, Wavelength w);

// J0(2 pi r / lambda): isotropic 2D scattering.
double clarke_acf_2d(double r, Wavelength w);

enum class AcfKind
{
    sinc_3d,
    bessel_2d,
};

struct AcfClosedForm
{
    AcfKind kind = AcfKind::sinc_3d;
    Wavelength wavelength = Wavelength::unit();

    double operator()(double r) const;
};

struct GridPoint
{
    double x = 0.0, y = 0.0, z = 0.0;
};

// Sample positions of an aperture relative to its first grid point, in
// realization order (x fastest, then y, then z-plane).
std::vector<GridPoint> grid_points(const Aperture &aperture, std::span<const double> z_planes = {});

// Symmetric matrix [C]_{nm} = c(|r_n - r_m|). Grids on a uniform line along x
// are stored as the first row of the Toeplitz matrix; other grids densely.
class CorrelationMatrix
{
public:
    static constexpr std::size_t max_points = 8192;

    std::size_t size() const noexcept { return n_; }
    bool toeplitz() const noexcept { return std::holds_alternative<std::vector<double>>(storage_); }
    double operator()(std::size_t i, std::size_t j) const;

    // First row; for Toeplitz storage it defines the whole matrix.
    std::vector<double> first_row() const;
    Eigen::MatrixXd dense() const;

    static CorrelationMatrix from_toeplitz_row(std::vector<double> row);
    static CorrelationMatrix from_dense(Eigen::MatrixXd m);

private:
    std::size_t n_ = 0;
    std::variant<std::vector<double>, Eigen::MatrixXd> storage_;
};

// Throws GridTooLarge above CorrelationMatrix::max_points.
CorrelationMatrix correlation_matrix(std::span<const GridPoint> points, const AcfClosedForm &acf);

// Draws h = C^{1/2} e with e ~ CN(0, I). The square root comes from a symmetric
// eigendecomposition; eigenvalues in [-tol * lambda_max, 0) are clipped to zero,
// anything below raises NotPSD.
class KlSampler
{
public:
    static constexpr double default_psd_tol = 1e-8;

    explicit KlSampler(const CorrelationMatrix &c, double psd_tol = default_psd_tol, bool clip = true);

    std::size_t size() const noexcept { return static_cast<std::size_t>(root_.rows()); }
    double min_eigenvalue() const noexcept { return min_eig_; }
    double max_eigenvalue() const noexcept { return max_eig_; }
    const Eigen::MatrixXd &root() const noexcept { return root_; }

    void sample_into(std::uint64_t seed, std::uint32_t realization, std::span<std::complex<double>> out) const;
    std::vector<std::complex<double>> sample(std::uint64_t seed, std::uint32_t realization) const;

private:
    Eigen::MatrixXd root_;
    double min_eig_ = 0.0;
    double max_eig_ = 0.0;
};

// M realizations of the KL sampler, realization r keyed by (seed, r).
std::vector<std::vector<std::complex<double>>> kl_sample(const CorrelationMatrix &c, std::uint64_t seed,
                                                         std::uint32_t realizations, Exec exec = Exec::parallel);

} // namespace holo
