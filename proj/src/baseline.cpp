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

#include "holo/baseline.hpp"

#include "holo/errors.hpp"
#include "holo/exec.hpp"
#include "holo/rng.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace holo
{

namespace
{

constexpr double series_limit = 12.0;

double j0_series(double z)
{
    const long double q = -0.25L * static_cast<long double>(z) * z;
    long double term = 1.0L;
    long double sum = 1.0L;
    for (int k = 1; k < 200; ++k)
    {
        term *= q / (static_cast<long double>(k) * k);
        sum += term;
        if (std::fabs(term) < 1e-21L * std::max(1.0L, std::fabs(sum)) && k > z)
            break;
    }
    return static_cast<double>(sum);
}

double j0_asymptotic(double z)
{
    // P and Q from t_k = prod_{j<=k} (2j-1)^2 / (k! (8z)^k), stopped at the smallest term.
    double p = 1.0, q = 0.0, t = 1.0;
    for (int k = 1; k < 100; ++k)
    {
        const double next = t * (2.0 * k - 1.0) * (2.0 * k - 1.0) / (8.0 * k * z);
        if (next >= t)
            break;
        t = next;
        if (t < 1e-18)
            break;
        // P = 1 - t2 + t4 - ..., Q = -t1 + t3 - ...
        const int half = (k + 1) / 2;
        const double sign = (half % 2 == 0) ? 1.0 : -1.0;
        if (k % 2 == 0)
            p += sign * t;
        else
            q += sign * t;
    }
    // cos(z - pi/4) and sin(z - pi/4) without rounding pi/4 into z.
    const double c = std::cos(z), s = std::sin(z);
    const double cos_chi = (c + s) / std::numbers::sqrt2;
    const double sin_chi = (s - c) / std::numbers::sqrt2;
    return std::sqrt(2.0 / (std::numbers::pi * z)) * (p * cos_chi - q * sin_chi);
}

double sin_pi(double x) noexcept
{
    const double k = std::nearbyint(x);
    const double f = x - k;
    if (f == 0.0)
        return 0.0;
    const double s = std::sin(std::numbers::pi * f);
    return std::fmod(k, 2.0) == 0.0 ? s : -s;
}

} // namespace

double bessel_j0(double z)
{
    if (!std::isfinite(z))
        throw InvalidArgument("bessel_j0: argument must be finite");
    z = std::fabs(z);
    return z <= series_limit ? j0_series(z) : j0_asymptotic(z);
}

double sinc_pi(double x) noexcept
{
    if (x == 0.0)
        return 1.0;
    return sin_pi(x) / (std::numbers::pi * x);
}

double clarke_acf_3d(double r, Wavelength w)
{
    if (!std::isfinite(r))
        throw InvalidArgument("distance must be finite");
    return sinc_pi(2.0 * r / w.lambda());
}

double clarke_acf_2d(double r, Wavelength w)
{
    if (!std::isfinite(r))
        throw InvalidArgument("distance must be finite");
    return bessel_j0(w.kappa() * r);
}

double AcfClosedForm::operator()(double r) const
{
    return kind == AcfKind::sinc_3d ? clarke_acf_3d(r, wavelength) : clarke_acf_2d(r, wavelength);
}

std::vector<GridPoint> grid_points(const Aperture &aperture, std::span<const double> z_planes)
{
    aperture.validate();
    const std::vector<double> zs = z_planes.empty() ? aperture.z_planes() : std::vector<double>(z_planes.begin(), z_planes.end());
    const std::size_t nx = aperture.nx(), ny = aperture.ny();
    const double sx = aperture.lx / static_cast<double>(nx);
    const double sy = ny > 1 ? aperture.ly / static_cast<double>(ny) : 0.0;
    std::vector<GridPoint> pts;
    pts.reserve(nx * ny * zs.size());
    for (double z : zs)
        for (std::size_t j = 0; j < ny; ++j)
            for (std::size_t n = 0; n < nx; ++n)
                pts.push_back({static_cast<double>(n) * sx, static_cast<double>(j) * sy, z - zs.front()});
    return pts;
}

double CorrelationMatrix::operator()(std::size_t i, std::size_t j) const
{
    if (i >= n_ || j >= n_)
        throw InvalidArgument("correlation matrix index out of range");
    if (const auto *row = std::get_if<std::vector<double>>(&storage_))
        return (*row)[i > j ? i - j : j - i];
    return std::get<Eigen::MatrixXd>(storage_)(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
}

std::vector<double> CorrelationMatrix::first_row() const
{
    if (const auto *row = std::get_if<std::vector<double>>(&storage_))
        return *row;
    const auto &m = std::get<Eigen::MatrixXd>(storage_);
    std::vector<double> out(n_);
    for (std::size_t j = 0; j < n_; ++j)
        out[j] = m(0, static_cast<Eigen::Index>(j));
    return out;
}

Eigen::MatrixXd CorrelationMatrix::dense() const
{
    if (const auto *m = std::get_if<Eigen::MatrixXd>(&storage_))
        return *m;
    const auto &row = std::get<std::vector<double>>(storage_);
    const auto n = static_cast<Eigen::Index>(n_);
    Eigen::MatrixXd out(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            out(i, j) = row[static_cast<std::size_t>(std::abs(i - j))];
    return out;
}

CorrelationMatrix CorrelationMatrix::from_toeplitz_row(std::vector<double> row)
{
    if (row.empty())
        throw InvalidArgument("correlation matrix must be non-empty");
    CorrelationMatrix c;
    c.n_ = row.size();
    c.storage_ = std::move(row);
    return c;
}

CorrelationMatrix CorrelationMatrix::from_dense(Eigen::MatrixXd m)
{
    if (m.rows() == 0 || m.rows() != m.cols())
        throw InvalidArgument("correlation matrix must be square and non-empty");
    CorrelationMatrix c;
    c.n_ = static_cast<std::size_t>(m.rows());
    c.storage_ = std::move(m);
    return c;
}

CorrelationMatrix correlation_matrix(std::span<const GridPoint> points, const AcfClosedForm &acf)
{
    const std::size_t n = points.size();
    if (n == 0)
        throw InvalidArgument("correlation_matrix: no points");
    if (n > CorrelationMatrix::max_points)
        throw GridTooLarge("correlation_matrix: " + std::to_string(n) + " points exceed the limit of " +
                           std::to_string(CorrelationMatrix::max_points));

    // Uniform line along x: x_i = x_0 + i d exactly (up to rounding in the input).
    bool line = n > 1;
    const double step = n > 1 ? points[1].x - points[0].x : 0.0;
    for (std::size_t i = 0; line && i < n; ++i)
    {
        const auto &p = points[i];
        const double expect = points[0].x + static_cast<double>(i) * step;
        line = p.y == points[0].y && p.z == points[0].z &&
               std::fabs(p.x - expect) <= 1e-12 * std::max(1.0, std::fabs(expect));
    }
    if (line || n == 1)
    {
        std::vector<double> row(n);
        for (std::size_t k = 0; k < n; ++k)
            row[k] = acf(static_cast<double>(k) * std::fabs(step));
        return CorrelationMatrix::from_toeplitz_row(std::move(row));
    }

    const auto dim = static_cast<Eigen::Index>(n);
    Eigen::MatrixXd m(dim, dim);
    for (std::size_t i = 0; i < n; ++i)
    {
        m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = acf(0.0);
        for (std::size_t j = i + 1; j < n; ++j)
        {
            const double dx = points[i].x - points[j].x;
            const double dy = points[i].y - points[j].y;
            const double dz = points[i].z - points[j].z;
            const double v = acf(std::sqrt(dx * dx + dy * dy + dz * dz));
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = v;
            m(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = v;
        }
    }
    return CorrelationMatrix::from_dense(std::move(m));
}

KlSampler::KlSampler(const CorrelationMatrix &c, double psd_tol, bool clip)
{
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(c.dense());
    if (eig.info() != Eigen::Success)
        throw Error("eigendecomposition did not converge");
    const Eigen::VectorXd &vals = eig.eigenvalues();
    min_eig_ = vals.minCoeff();
    max_eig_ = vals.maxCoeff();
    if (min_eig_ < -psd_tol * std::max(max_eig_, 0.0))
        throw NotPSD("correlation matrix has eigenvalue " + std::to_string(min_eig_) + " below tolerance");
    Eigen::VectorXd root_vals(vals.size());
    for (Eigen::Index i = 0; i < vals.size(); ++i)
        root_vals(i) = clip ? std::sqrt(std::max(vals(i), 0.0)) : std::sqrt(std::fabs(vals(i)));
    const Eigen::MatrixXd &v = eig.eigenvectors();
    root_ = v * root_vals.asDiagonal() * v.transpose();
}

void KlSampler::sample_into(std::uint64_t seed, std::uint32_t realization, std::span<std::complex<double>> out) const
{
    const auto n = root_.rows();
    if (out.size() != static_cast<std::size_t>(n))
        throw InvalidArgument("KL sample buffer size mismatch");
    Eigen::MatrixXd e(n, 2);
    for (Eigen::Index i = 0; i < n; ++i)
    {
        const auto z = complex_normal(seed, static_cast<std::uint64_t>(i), realization, Stream::kl_white);
        e(i, 0) = z.real();
        e(i, 1) = z.imag();
    }
    const Eigen::MatrixXd h = root_ * e;
    for (Eigen::Index i = 0; i < n; ++i)
        out[static_cast<std::size_t>(i)] = {h(i, 0), h(i, 1)};
}

std::vector<std::complex<double>> KlSampler::sample(std::uint64_t seed, std::uint32_t realization) const
{
    std::vector<std::complex<double>> out(size());
    sample_into(seed, realization, out);
    return out;
}

std::vector<std::vector<std::complex<double>>> kl_sample(const CorrelationMatrix &c, std::uint64_t seed,
                                                         std::uint32_t realizations, Exec exec)
{
    const KlSampler sampler(c);
    std::vector<std::vector<std::complex<double>>> out(realizations);
    const auto m = static_cast<std::int64_t>(realizations);
    if (exec == Exec::serial)
    {
        for (std::int64_t r = 0; r < m; ++r)
            out[static_cast<std::size_t>(r)] = sampler.sample(seed, static_cast<std::uint32_t>(r));
        return out;
    }
    ExceptionSink sink;
#pragma omp parallel for schedule(static)
    for (std::int64_t r = 0; r < m; ++r)
        sink.run([&] { out[static_cast<std::size_t>(r)] = sampler.sample(seed, static_cast<std::uint32_t>(r)); });
    sink.rethrow();
    return out;
}

} // namespace holo
