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

#include "holo/variances.hpp"

#include "holo/errors.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace holo
{

namespace
{

constexpr double pi = std::numbers::pi;
constexpr double half_pi = std::numbers::pi / 2.0;

std::string index_str(LatticeIndex idx)
{
    return "(" + std::to_string(idx.l) + ", " + std::to_string(idx.m) + ")";
}

// Neumaier compensated sum of 2 * v over a range.
template <class Range>
double doubled_sum(const Range &values) noexcept
{
    double sum = 0.0, comp = 0.0;
    for (double v : values)
    {
        const double x = 2.0 * v;
        const double t = sum + x;
        comp += std::abs(sum) >= std::abs(x) ? (sum - t) + x : (x - t) + sum;
        sum = t;
    }
    return sum + comp;
}

std::int64_t integer_ratio(double lx, Wavelength w)
{
    const double r = lx / w.lambda();
    const double n = std::round(r);
    if (!(n >= 1.0) || std::abs(r - n) > 1e-9 * std::max(1.0, n))
        throw InvalidArgument("1D variances need Lx / lambda to be a positive integer (got " + std::to_string(r) + ")");
    return static_cast<std::int64_t>(n);
}

// First-quadrant cell [a, b] x [c, d] in units of kappa, after folding.
struct Cell
{
    double a, b, c, d;
};

Cell folded_cell(LatticeIndex idx, double lx, double ly, Wavelength w)
{
    const LatticeIndex f = fold(idx);
    const double nx = lx / w.lambda();
    const double ny = ly / w.lambda();
    return {static_cast<double>(f.l) / nx, static_cast<double>(f.l + 1) / nx, static_cast<double>(f.m) / ny,
            static_cast<double>(f.m + 1) / ny};
}

void require_cell(LatticeIndex idx, double lx, double ly, Wavelength w)
{
    if (!(lx > 0.0) || !(ly > 0.0))
        throw InvalidArgument("aperture sides must be positive");
    if (!in_coefficient_lattice(idx, lx, ly, w))
        throw IndexOutOfBand("index " + index_str(idx) + " is outside the coefficient lattice");
}

// ---- quadrature ---------------------------------------------------------

// Integrand after the radial substitution k_r = sin u: k_r / sqrt(1 - k_r^2) dk_r = sin u du.
// For a ray at angle phi the cell occupies r in [r_lo, r_hi], clipped to the unit disk.
double polar_cell_quadrature(const Cell &cell, double tol)
{
    const auto [a, b, c, d] = cell;
    if (a * a + c * c >= 1.0)
        return 0.0;

    const double phi_lo = std::atan2(c, b);
    const double phi_hi = std::atan2(d, a);

    // Integrand kinks: the two corners swept by the entry/exit switch, and every
    // point where a cell edge crosses the unit circle.
    std::vector<double> breaks{phi_lo, phi_hi, std::atan2(c, a), std::atan2(d, b)};
    auto add_crossing = [&](double x, double y) {
        if (x >= a && x <= b && y >= c && y <= d)
            breaks.push_back(std::atan2(y, x));
    };
    if (a < 1.0)
        add_crossing(a, std::sqrt(1.0 - a * a));
    if (b < 1.0)
        add_crossing(b, std::sqrt(1.0 - b * b));
    if (c < 1.0)
        add_crossing(std::sqrt(1.0 - c * c), c);
    if (d < 1.0)
        add_crossing(std::sqrt(1.0 - d * d), d);
    std::sort(breaks.begin(), breaks.end());
    breaks.erase(std::remove_if(breaks.begin(), breaks.end(), [&](double p) { return p < phi_lo || p > phi_hi; }),
                 breaks.end());
    breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

    auto radial = [&](double phi) {
        const double cs = std::cos(phi);
        const double sn = std::sin(phi);
        const double r_lo = std::max(a > 0.0 ? a / cs : 0.0, c > 0.0 ? c / sn : 0.0);
        const double r_hi = std::min(cs > 0.0 ? b / cs : INFINITY, sn > 0.0 ? d / sn : INFINITY);
        const double u_lo = std::asin(std::min(r_lo, 1.0));
        const double u_hi = std::asin(std::min(r_hi, 1.0));
        if (!(u_hi > u_lo))
            return 0.0;
        return boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
            [](double u) { return std::sin(u); }, u_lo, u_hi, 10, tol);
    };

    boost::math::quadrature::tanh_sinh<double> outer;
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i)
    {
        if (breaks[i + 1] - breaks[i] <= 0.0)
            continue;
        total += outer.integrate(radial, breaks[i], breaks[i + 1], tol);
    }
    return total;
}

// ---- closed form --------------------------------------------------------

// P(X, Y) = iint_{[0,X] x [0,Y] & D(1)} dx dy / sqrt(1 - x^2 - y^2), X, Y >= 0.
//
// Integrating in x first gives asin(min(1, X / sqrt(1 - y^2))). With
// c = sqrt(1 - X^2) the y-integral up to c has the primitive
//   G(y) = y asin(X / sqrt(1 - y^2)) + X asin(y / c) - atan(X y / sqrt(c^2 - y^2)),
// and beyond c the integrand is the constant pi/2 (G(c) = pi/2 (X + c - 1)).
double rectangle_primitive(double x, double y) noexcept
{
    if (x > y)
        std::swap(x, y);
    if (x <= 0.0)
        return 0.0;
    const double ye = std::min(y, 1.0);
    if (x >= 1.0)
        return half_pi * ye;
    const double c = std::sqrt((1.0 - x) * (1.0 + x));
    if (ye >= c)
        return half_pi * (x + ye - 1.0);
    const double s = std::sqrt((c - ye) * (c + ye));
    return ye * std::asin(std::min(1.0, x / std::sqrt((1.0 - ye) * (1.0 + ye)))) + x * std::asin(ye / c) -
           std::atan2(x * ye, s);
}

} // namespace

// ---- 1D ------------------------------------------------------------------

double CoefficientVariances1D::at(std::int64_t l) const
{
    if (l < l_min() || l > l_max())
        throw IndexOutOfBand("1D index " + std::to_string(l) + " outside [" + std::to_string(l_min()) + ", " +
                             std::to_string(l_max()) + "]");
    return sigma_sq[static_cast<std::size_t>(l + n)];
}

double variance_1d(std::int64_t l, double lx, Wavelength w)
{
    const std::int64_t n = integer_ratio(lx, w);
    if (l < -n || l > n - 1)
        throw IndexOutOfBand("1D index " + std::to_string(l) + " outside [" + std::to_string(-n) + ", " +
                             std::to_string(n - 1) + "]");
    const double k = static_cast<double>(fold_index(l));
    const double nn = static_cast<double>(n);
    const double hi = k + 1.0 == nn ? half_pi : std::asin((k + 1.0) / nn);
    return (hi - std::asin(k / nn)) / (2.0 * pi);
}

CoefficientVariances1D variances_1d(double lx, Wavelength w)
{
    CoefficientVariances1D v;
    v.n = integer_ratio(lx, w);
    v.sigma_sq.resize(static_cast<std::size_t>(2 * v.n));
    for (std::int64_t l = -v.n; l < v.n; ++l)
        v.sigma_sq[static_cast<std::size_t>(l + v.n)] = variance_1d(l, lx, w);
    return v;
}

// ---- 2D ------------------------------------------------------------------

double variance_2d_quadrature(LatticeIndex idx, double lx, double ly, Wavelength w, double tol)
{
    require_cell(idx, lx, ly, w);
    if (!(tol > 0.0))
        throw InvalidArgument("quadrature tolerance must be positive");
    return polar_cell_quadrature(folded_cell(idx, lx, ly, w), tol) / (4.0 * pi);
}

double variance_2d_closed_form(LatticeIndex idx, double lx, double ly, Wavelength w)
{
    require_cell(idx, lx, ly, w);
    const auto [a, b, c, d] = folded_cell(idx, lx, ly, w);
    const double v = rectangle_primitive(b, d) - rectangle_primitive(a, d) - rectangle_primitive(b, c) +
                     rectangle_primitive(a, c);
    return std::max(0.0, v / (4.0 * pi));
}

CoefficientVariances2D::CoefficientVariances2D(double lx_over_lambda, double ly_over_lambda,
                                               std::vector<LatticeIndex> indices, std::vector<double> sigma_sq)
    : lx_(lx_over_lambda), ly_(ly_over_lambda), indices_(std::move(indices)), sigma_sq_(std::move(sigma_sq))
{
    if (indices_.size() != sigma_sq_.size())
        throw InvalidArgument("variance table: index and value counts differ");
    // Rows are contiguous runs of constant m with consecutive l.
    for (std::size_t i = 0; i < indices_.size(); ++i)
    {
        const auto idx = indices_[i];
        if (rows_.empty())
        {
            m_first_ = idx.m;
            rows_.push_back({idx.l, 0, i});
        }
        else if (const auto current = m_first_ + static_cast<std::int64_t>(rows_.size()) - 1; idx.m != current)
        {
            if (idx.m != current + 1)
                throw InvalidArgument("variance table: rows must have consecutive m");
            rows_.push_back({idx.l, 0, i});
        }
        auto &row = rows_.back();
        if (idx.l != row.l_first + row.count)
            throw InvalidArgument("variance table: row entries must have consecutive l");
        ++row.count;
    }
}

std::optional<std::size_t> CoefficientVariances2D::position(LatticeIndex idx) const noexcept
{
    const std::int64_t r = idx.m - m_first_;
    if (r < 0 || r >= static_cast<std::int64_t>(rows_.size()))
        return std::nullopt;
    const auto &row = rows_[static_cast<std::size_t>(r)];
    const std::int64_t k = idx.l - row.l_first;
    if (k < 0 || k >= row.count)
        return std::nullopt;
    return row.offset + static_cast<std::size_t>(k);
}

double CoefficientVariances2D::at(LatticeIndex idx) const
{
    const auto pos = position(idx);
    if (!pos)
        throw IndexOutOfBand("index " + index_str(idx) + " is not in the variance table");
    return sigma_sq_[*pos];
}

CoefficientVariances2D variances_2d(double lx, double ly, Wavelength w, VarianceMethod method, Exec exec, double tol)
{
    auto indices = coefficient_lattice(lx, ly, w);
    std::vector<double> values(indices.size(), 0.0);
    const auto n = static_cast<std::ptrdiff_t>(indices.size());

    auto eval = [&](std::ptrdiff_t i) {
        const auto idx = indices[static_cast<std::size_t>(i)];
        values[static_cast<std::size_t>(i)] = method == VarianceMethod::quadrature
                                                  ? variance_2d_quadrature(idx, lx, ly, w, tol)
                                                  : variance_2d_closed_form(idx, lx, ly, w);
    };

    if (exec == Exec::serial)
    {
        for (std::ptrdiff_t i = 0; i < n; ++i)
            eval(i);
    }
    else
    {
        ExceptionSink sink;
#pragma omp parallel for schedule(dynamic, 16)
        for (std::ptrdiff_t i = 0; i < n; ++i)
            sink.run([&] { eval(i); });
        sink.rethrow();
    }
    return CoefficientVariances2D(lx / w.lambda(), ly / w.lambda(), std::move(indices), std::move(values));
}

double total_power(const CoefficientVariances1D &v) noexcept { return doubled_sum(v.sigma_sq); }

double total_power(const CoefficientVariances2D &v) noexcept { return doubled_sum(v.sigma_sq()); }

} // namespace holo
