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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace holo;
using std::numbers::pi;

namespace
{

const auto unit = Wavelength::unit();

// J0(z) = (1/pi) int_0^pi cos(z sin t) dt. The integrand is smooth and
// periodic, so the trapezoid rule converges geometrically.
double j0_trapezoid(double z, int n = 1024)
{
    double s = 0.0;
    for (int i = 0; i < n; ++i)
        s += std::cos(z * std::cos(two_pi * i / n));
    return s / n;
}

double bisect(auto f, double a, double b)
{
    for (int i = 0; i < 200; ++i)
    {
        const double c = 0.5 * (a + b);
        ((f(a) < 0) == (f(c) < 0) ? a : b) = c;
    }
    return 0.5 * (a + b);
}

} // namespace

TEST(ClosedForm, SincExamples)
{
    EXPECT_EQ(clarke_acf_3d(0.0, unit), 1.0);
    EXPECT_NEAR(clarke_acf_3d(0.25, unit), 2.0 / pi, 1e-15);
    for (int k = 1; k <= 20; ++k)
        EXPECT_EQ(clarke_acf_3d(k * 0.5, unit), 0.0) << k;
    EXPECT_NEAR(clarke_acf_3d(0.15, Wavelength(0.1)), 0.0, 1e-15);
}

TEST(ClosedForm, EvenAndBounded)
{
    for (int i = 0; i < 400; ++i)
    {
        const double r = 0.013 * i;
        EXPECT_EQ(clarke_acf_3d(r, unit), clarke_acf_3d(-r, unit));
        EXPECT_EQ(clarke_acf_2d(r, unit), clarke_acf_2d(-r, unit));
        EXPECT_LE(std::fabs(clarke_acf_3d(r, unit)), 1.0);
        EXPECT_LE(std::fabs(clarke_acf_2d(r, unit)), 1.0);
    }
}

TEST(BesselJ0, MatchesStandardLibrary)
{
    for (int i = 0; i <= 4000; ++i)
    {
        const double z = 0.05 * i;
        EXPECT_NEAR(bessel_j0(z), std::cyl_bessel_j(0.0, z), 1e-12) << z;
    }
}

TEST(BesselJ0, MatchesIntegralRepresentation)
{
    for (int i = 0; i <= 200; ++i)
    {
        const double z = 1.0 * i + 0.37;
        EXPECT_NEAR(bessel_j0(z), j0_trapezoid(z), 1e-10) << z;
    }
}

TEST(BesselJ0, Landmarks)
{
    EXPECT_EQ(bessel_j0(0.0), 1.0);
    EXPECT_NEAR(clarke_acf_2d(0.5, unit), -0.3042421776440938, 1e-13);
    const double r0 = bisect([](double r) { return clarke_acf_2d(r, unit); }, 0.3, 0.45);
    EXPECT_NEAR(r0, 2.404825557695773 / two_pi, 1e-12);
    EXPECT_NEAR(r0, 0.38274, 1e-5);
}

TEST(Grid, PointsAreRelative)
{
    const auto pts = grid_points(Aperture::planar(2.0, 1.0, 0.5, 0.5));
    ASSERT_EQ(pts.size(), 8u);
    EXPECT_EQ(pts[0].x, 0.0);
    EXPECT_EQ(pts[1].x, 0.5);
    EXPECT_EQ(pts[4].x, 0.0);
    EXPECT_EQ(pts[4].y, 0.5);
    const std::vector<double> z{0.0, 0.25};
    const auto v = grid_points(Aperture::planar(2.0, 1.0, 0.5, 0.5), z);
    ASSERT_EQ(v.size(), 16u);
    EXPECT_EQ(v[8].z, 0.25);
}

TEST(Correlation, TwoPointsAtHalfWavelength)
{
    const std::vector<GridPoint> pts{{0, 0, 0}, {0.5, 0, 0}};
    const auto c = correlation_matrix(pts, {AcfKind::sinc_3d});
    EXPECT_EQ(c(0, 0), 1.0);
    EXPECT_EQ(c(0, 1), 0.0);
    EXPECT_EQ(c(1, 0), 0.0);
    EXPECT_EQ(c(1, 1), 1.0);
}

TEST(Correlation, SinglePoint)
{
    const std::vector<GridPoint> pts{{0, 0, 0}};
    const auto c = correlation_matrix(pts, {AcfKind::bessel_2d});
    EXPECT_EQ(c.size(), 1u);
    EXPECT_EQ(c(0, 0), 1.0);
}

TEST(Correlation, ThreePointRow)
{
    const std::vector<GridPoint> pts{{0, 0, 0}, {0.25, 0, 0}, {0.5, 0, 0}};
    const auto c = correlation_matrix(pts, {AcfKind::sinc_3d});
    const auto row = c.first_row();
    ASSERT_EQ(row.size(), 3u);
    EXPECT_EQ(row[0], 1.0);
    EXPECT_NEAR(row[1], 2.0 / pi, 1e-15);
    EXPECT_EQ(row[2], 0.0);
}

TEST(Correlation, ToeplitzForLines)
{
    const auto line = grid_points(Aperture::linear(4.0, 0.25));
    const auto c = correlation_matrix(line, {AcfKind::bessel_2d});
    EXPECT_TRUE(c.toeplitz());
    const auto d = c.dense();
    for (std::size_t i = 0; i < c.size(); ++i)
        for (std::size_t j = 0; j < c.size(); ++j)
        {
            EXPECT_EQ(d(i, j), d(j, i));
            EXPECT_NEAR(d(i, j), clarke_acf_2d(0.25 * std::fabs(double(i) - double(j)), unit), 1e-15);
        }
    const auto plane = grid_points(Aperture::planar(2.0, 2.0, 0.5, 0.5));
    const auto p = correlation_matrix(plane, {AcfKind::sinc_3d});
    EXPECT_FALSE(p.toeplitz());
    EXPECT_NEAR(p(0, 5), clarke_acf_3d(std::sqrt(0.5), unit), 1e-15);
}

TEST(Correlation, TooLarge)
{
    const auto pts = grid_points(Aperture::planar(64.0, 32.0, 0.5, 0.25));
    ASSERT_GT(pts.size(), CorrelationMatrix::max_points);
    EXPECT_THROW(correlation_matrix(pts, {AcfKind::sinc_3d}), GridTooLarge);
}

TEST(Kl, IdentityGivesIndependentSamples)
{
    const auto c = CorrelationMatrix::from_dense(Eigen::MatrixXd::Identity(4, 4));
    const KlSampler kl(c);
    EXPECT_NEAR((kl.root() - Eigen::MatrixXd::Identity(4, 4)).cwiseAbs().maxCoeff(), 0.0, 1e-14);
    const std::uint32_t m = 20000;
    const auto s = kl_sample(c, 3, m);
    std::complex<double> c01{};
    double p0 = 0.0;
    for (const auto &h : s)
    {
        c01 += std::conj(h[0]) * h[1];
        p0 += std::norm(h[0]);
    }
    EXPECT_NEAR(p0 / m, 1.0, 4.0 / std::sqrt(double(m)));
    EXPECT_LT(std::abs(c01) / m, 4.0 / std::sqrt(double(m)));
}

TEST(Kl, SampleCovarianceMatchesMatrix)
{
    const auto pts = grid_points(Aperture::linear(2.0, 0.125));
    const auto c = correlation_matrix(pts, {AcfKind::bessel_2d});
    const std::uint32_t m = 10000;
    const auto s = kl_sample(c, 4, m);
    const std::size_t n = c.size();
    Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(n, n);
    for (const auto &h : s)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                acc(i, j) += std::conj(h[i]) * h[j];
    acc /= double(m);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            EXPECT_LT(std::abs(acc(i, j) - c(i, j)), 3.0 / std::sqrt(double(m))) << i << "," << j;
}

TEST(Kl, RootSquaresToMatrix)
{
    const auto pts = grid_points(Aperture::planar(2.0, 2.0, 0.5, 0.5));
    const auto c = correlation_matrix(pts, {AcfKind::sinc_3d});
    const KlSampler kl(c);
    EXPECT_LT((kl.root() * kl.root() - c.dense()).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(Kl, ClippingIsNoOpOnCleanMatrix)
{
    Eigen::MatrixXd m(3, 3);
    m << 2, 0.5, 0.1, 0.5, 2, 0.3, 0.1, 0.3, 2;
    const auto c = CorrelationMatrix::from_dense(m);
    const KlSampler a(c, KlSampler::default_psd_tol, true), b(c, KlSampler::default_psd_tol, false);
    EXPECT_EQ(a.root(), b.root());
    EXPECT_EQ(a.sample(1, 2), b.sample(1, 2));
    EXPECT_GT(a.min_eigenvalue(), 0.0);
}

TEST(Kl, IndefiniteRejected)
{
    Eigen::MatrixXd m(2, 2);
    m << 1, 2, 2, 1;
    EXPECT_THROW(KlSampler(CorrelationMatrix::from_dense(m)), NotPSD);
}

TEST(Kl, Deterministic)
{
    const auto c = correlation_matrix(grid_points(Aperture::linear(2.0, 0.25)), {AcfKind::bessel_2d});
    const KlSampler kl(c);
    EXPECT_EQ(kl.sample(9, 1), kl.sample(9, 1));
    EXPECT_NE(kl.sample(9, 1), kl.sample(9, 2));
    EXPECT_EQ(kl_sample(c, 9, 50, Exec::serial), kl_sample(c, 9, 50, Exec::parallel));
}
