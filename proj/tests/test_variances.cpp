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

#include "holo/errors.hpp"
#include "holo/log.hpp"
#include "holo/variances.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

using namespace holo;
using std::numbers::pi;

namespace
{

const auto unit = Wavelength::unit();

// Independent oracle: the inner k_y integral of 1/sqrt(1 - x^2 - y^2) is an
// arcsine, leaving a bounded 1D integral over x split at its kinks.
double cell_oracle(double a, double b, double c, double d)
{
    a = std::max(a, -1.0);
    b = std::min(b, 1.0);
    if (a >= b)
        return 0.0;
    auto inner = [c, d](double x) {
        const double s = std::sqrt(std::max(0.0, 1.0 - x * x));
        if (s == 0.0)
            return 0.0;
        const double hi = std::clamp(d / s, -1.0, 1.0), lo = std::clamp(c / s, -1.0, 1.0);
        return std::asin(hi) - std::asin(lo);
    };
    std::vector<double> cuts{a, b};
    for (double y : {c, d})
        if (std::fabs(y) < 1.0)
            for (double x : {std::sqrt(1 - y * y), -std::sqrt(1 - y * y)})
                if (x > a && x < b)
                    cuts.push_back(x);
    std::sort(cuts.begin(), cuts.end());
    boost::math::quadrature::tanh_sinh<double> ts;
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
        if (cuts[i + 1] > cuts[i])
            sum += ts.integrate(inner, cuts[i], cuts[i + 1], 1e-14);
    return sum / (4 * pi);
}

double oracle(LatticeIndex idx, double lx, double ly)
{
    return cell_oracle(idx.l / lx, (idx.l + 1) / lx, idx.m / ly, (idx.m + 1) / ly);
}

class Quiet : public ::testing::Test
{
protected:
    void SetUp() override { set_warnings_enabled(false); }
    void TearDown() override { set_warnings_enabled(true); }
};

} // namespace

TEST(Variance1D, Examples)
{
    EXPECT_EQ(variance_1d(0, 1.0, unit), 0.25);
    EXPECT_EQ(variance_1d(-1, 1.0, unit), 0.25);
    EXPECT_NEAR(variance_1d(0, 16.0, unit), 9.9537e-3, 5e-8);
    EXPECT_NEAR(variance_1d(0, 16.0, unit), std::asin(1.0 / 16) / (2 * pi), 1e-17);
}

TEST(Variance1D, MatchesQuadratureOfDensity)
{
    boost::math::quadrature::tanh_sinh<double> ts;
    for (std::int64_t l = 0; l < 16; ++l)
    {
        // xc is the signed distance to the nearer endpoint, which keeps 1 - x near x = 1 accurate.
        const double a = l / 16.0, b = (l + 1) / 16.0;
        auto f = [b](double x, double xc) {
            const double one_minus = (b == 1.0 && xc > 0) ? xc : 1.0 - x;
            return 1.0 / std::sqrt(one_minus * (1.0 + x));
        };
        const double q = ts.integrate(f, a, b) / (2 * pi);
        EXPECT_NEAR(variance_1d(l, 16.0, unit), q, 1e-13) << l;
    }
}

TEST(Variance1D, SymmetryAndTotal)
{
    for (double L : {1.0, 4.0, 16.0, 37.0})
    {
        const auto v = variances_1d(L, unit);
        for (std::int64_t l = 0; l < v.n; ++l)
        {
            EXPECT_EQ(v.at(-l - 1), v.at(l));
            EXPECT_GE(v.at(l), 0.0);
        }
        EXPECT_NEAR(total_power(v), 1.0, 1e-12) << L;
    }
}

TEST(Variance1D, Errors)
{
    EXPECT_THROW(variance_1d(1, 1.0, unit), IndexOutOfBand);
    EXPECT_THROW(variance_1d(-2, 1.0, unit), IndexOutOfBand);
    EXPECT_THROW(variance_1d(0, 2.5, unit), InvalidArgument);
    EXPECT_THROW(variances_1d(2.5, unit), InvalidArgument);
    EXPECT_THROW(variances_1d(4.0, unit).at(4), IndexOutOfBand);
}

TEST(Variance2D, UnitApertureQuadrature)
{
    EXPECT_NEAR(variance_2d_quadrature({0, 0}, 1.0, 1.0, unit), 0.125, 1e-9);
    EXPECT_NEAR(variance_2d_quadrature({1, 0}, 1.0, 1.0, unit), 0.0, 1e-12);
    EXPECT_NEAR(variance_2d_quadrature({-1, 0}, 1.0, 1.0, unit), 0.125, 1e-9);
    EXPECT_NEAR(variance_2d_quadrature({-1, -1}, 1.0, 1.0, unit), 0.125, 1e-9);
}

TEST(Variance2D, UnitApertureClosedForm)
{
    EXPECT_NEAR(variance_2d_closed_form({0, 0}, 1.0, 1.0, unit), 0.125, 1e-14);
    EXPECT_NEAR(variance_2d_closed_form({0, -1}, 1.0, 1.0, unit), 0.125, 1e-14);
}

TEST(Variance2D, OutsideLatticeRejected)
{
    EXPECT_THROW(variance_2d_quadrature({3, 0}, 1.0, 1.0, unit), IndexOutOfBand);
    EXPECT_THROW(variance_2d_closed_form({0, 17}, 16.0, 16.0, unit), IndexOutOfBand);
}

TEST(Variance2D, ClosedFormMatchesQuadratureExamples)
{
    for (LatticeIndex idx : {LatticeIndex{0, 0}, LatticeIndex{3, 1}})
    {
        const double q = variance_2d_quadrature(idx, 16.0, 16.0, unit);
        const double c = variance_2d_closed_form(idx, 16.0, 16.0, unit);
        EXPECT_NEAR(c, q, 1e-8 * q);
    }
}

TEST_F(Quiet, QuadratureMatchesIndependentOracle)
{
    for (auto [lx, ly] : {std::pair{1.0, 1.0}, std::pair{4.0, 4.0}, std::pair{5.5, 3.0}})
        for (auto idx : coefficient_lattice(lx, ly, unit))
            EXPECT_NEAR(variance_2d_quadrature(idx, lx, ly, unit), oracle(idx, lx, ly), 2e-10)
                << idx.l << "," << idx.m << " L=" << lx << "x" << ly;
}

TEST(Variance2D, BoundaryCellsAgainstOracle)
{
    // Cells cut by the unit circle at L = 16.
    for (LatticeIndex idx : {LatticeIndex{15, 0}, LatticeIndex{15, 3}, LatticeIndex{11, 11}, LatticeIndex{-16, -1},
                             LatticeIndex{0, 15}, LatticeIndex{7, -15}})
    {
        const double o = oracle(idx, 16.0, 16.0);
        EXPECT_NEAR(variance_2d_quadrature(idx, 16.0, 16.0, unit), o, 1e-10) << idx.l << "," << idx.m;
        EXPECT_NEAR(variance_2d_closed_form(idx, 16.0, 16.0, unit), o, 1e-11) << idx.l << "," << idx.m;
    }
}

TEST_F(Quiet, ClosedFormMatchesQuadratureEverywhere)
{
    for (double L : {4.0, 16.0})
    {
        const auto q = variances_2d(L, L, unit, VarianceMethod::quadrature);
        const auto c = variances_2d(L, L, unit, VarianceMethod::closed_form);
        ASSERT_EQ(q.size(), c.size());
        for (std::size_t i = 0; i < q.size(); ++i)
            EXPECT_NEAR(c.sigma_sq()[i], q.sigma_sq()[i], 1e-8 * q.sigma_sq()[i] + 1e-15)
                << q.indices()[i].l << "," << q.indices()[i].m;
    }
}

TEST_F(Quiet, QuadrantSymmetry)
{
    const auto t = variances_2d(8.0, 6.0, unit);
    for (auto idx : t.indices())
    {
        EXPECT_NEAR(t.at({-idx.l - 1, idx.m}), t.at(idx), 1e-12);
        EXPECT_NEAR(t.at({idx.l, -idx.m - 1}), t.at(idx), 1e-12);
    }
}

TEST_F(Quiet, TotalPower)
{
    EXPECT_NEAR(total_power(variances_2d(1.0, 1.0, unit)), 1.0, 1e-9);
    double prev = 0.0;
    for (double L : {2.0, 4.0, 8.0, 16.0})
    {
        const auto t = variances_2d(L, L, unit);
        const double p = total_power(t);
        // Every lattice covers the whole disk, so the totals differ only by rounding.
        EXPECT_GE(p, prev - 1e-12) << L;
        EXPECT_LE(p, 1.0 + 1e-9);
        for (double s : t.sigma_sq())
            EXPECT_GE(s, 0.0);
        prev = p;
    }
    EXPECT_GT(prev, 0.95);
}

TEST_F(Quiet, ToleranceHalvingIsStable)
{
    for (auto idx : coefficient_lattice(4.0, 4.0, unit))
    {
        const double a = variance_2d_quadrature(idx, 4.0, 4.0, unit, 1e-10);
        const double b = variance_2d_quadrature(idx, 4.0, 4.0, unit, 5e-11);
        EXPECT_NEAR(a, b, 1e-10);
    }
}

TEST_F(Quiet, SerialAndParallelTablesIdentical)
{
    const auto s = variances_2d(8.0, 8.0, unit, VarianceMethod::quadrature, Exec::serial);
    const auto p = variances_2d(8.0, 8.0, unit, VarianceMethod::quadrature, Exec::parallel);
    EXPECT_EQ(s.sigma_sq(), p.sigma_sq());
}

TEST_F(Quiet, NonIntegerApertureAllowedIn2D)
{
    const auto t = variances_2d(7.5, 4.25, unit, VarianceMethod::closed_form);
    EXPECT_GT(total_power(t), 0.8);
    EXPECT_LE(total_power(t), 1.0 + 1e-9);
}

TEST(VarianceTable, Lookup)
{
    const auto t = variances_2d(4.0, 4.0, unit, VarianceMethod::closed_form);
    for (std::size_t i = 0; i < t.size(); ++i)
        EXPECT_EQ(t.position(t.indices()[i]), i);
    EXPECT_FALSE(t.position({100, 0}).has_value());
    EXPECT_THROW(t.at({100, 0}), IndexOutOfBand);
}
