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

#include "holo/spectrum.hpp"

#include "holo/errors.hpp"
#include "holo/text.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <numbers>
#include <sstream>
#include <utility>

namespace holo
{

double isotropic_factor_3d(double kappa)
{
    if (!(kappa > 0.0))
        throw InvalidArgument("kappa must be positive");
    return two_pi / std::sqrt(kappa);
}

double isotropic_factor_2d(double kappa)
{
    if (!(kappa > 0.0))
        throw InvalidArgument("kappa must be positive");
    return 2.0 * std::sqrt(std::numbers::pi);
}

struct SpectralFactor::Table
{
    PolarTable data;

    // Bilinear in (radius, angle); clamped in radius, periodic in angle.
    DirectionalPair at(double r, double phi) const
    {
        const auto &rs = data.radii;
        const auto &ps = data.angles;
        const std::size_t np = ps.size();

        std::size_t i0 = 0, i1 = 0;
        double tr = 0.0;
        if (r <= rs.front())
            i0 = i1 = 0;
        else if (r >= rs.back())
            i0 = i1 = rs.size() - 1;
        else
        {
            i1 = static_cast<std::size_t>(std::upper_bound(rs.begin(), rs.end(), r) - rs.begin());
            i0 = i1 - 1;
            tr = (r - rs[i0]) / (rs[i1] - rs[i0]);
        }

        phi = std::fmod(phi, two_pi);
        if (phi < 0.0)
            phi += two_pi;
        std::size_t j0 = 0, j1 = 0;
        double tp = 0.0;
        if (np > 1)
        {
            auto it = std::upper_bound(ps.begin(), ps.end(), phi);
            if (it == ps.begin() || it == ps.end())
            {
                // Wrap-around interval between the last and the first angle.
                j0 = np - 1;
                j1 = 0;
                const double span = ps.front() + two_pi - ps.back();
                double d = phi - ps.back();
                if (d < 0.0)
                    d += two_pi;
                tp = d / span;
            }
            else
            {
                j1 = static_cast<std::size_t>(it - ps.begin());
                j0 = j1 - 1;
                tp = (phi - ps[j0]) / (ps[j1] - ps[j0]);
            }
        }

        auto lerp2 = [&](const std::vector<double> &v) {
            const double a = v[i0 * np + j0] * (1.0 - tp) + v[i0 * np + j1] * tp;
            const double b = v[i1 * np + j0] * (1.0 - tp) + v[i1 * np + j1] * tp;
            return a * (1.0 - tr) + b * tr;
        };
        return {lerp2(data.a_plus), lerp2(data.a_minus)};
    }
};

SpectralFactor SpectralFactor::isotropic_3d()
{
    SpectralFactor f(FactorKind::isotropic_3d, "isotropic");
    auto a = [](WavenumberPoint, double kappa) { return isotropic_factor_3d(kappa); };
    f.plus_ = a;
    f.minus_ = a;
    return f;
}

SpectralFactor SpectralFactor::isotropic_2d()
{
    SpectralFactor f(FactorKind::isotropic_2d, "isotropic-2d");
    auto a = [](WavenumberPoint, double kappa) { return isotropic_factor_2d(kappa); };
    f.plus_ = a;
    f.minus_ = a;
    return f;
}

SpectralFactor SpectralFactor::analytic(Fn a_plus, Fn a_minus, std::string id)
{
    if (!a_plus || !a_minus)
        throw InvalidArgument("analytic spectral factor needs both directional functions");
    SpectralFactor f(FactorKind::analytic, std::move(id));
    f.plus_ = std::move(a_plus);
    f.minus_ = std::move(a_minus);
    f.probe();
    return f;
}

SpectralFactor SpectralFactor::tabulated(PolarTable table, std::string id)
{
    const std::size_t nr = table.radii.size();
    const std::size_t np = table.angles.size();
    if (nr == 0 || np == 0)
        throw InvalidArgument("tabulated spectral factor needs at least one radius and one angle");
    if (table.a_plus.size() != nr * np || table.a_minus.size() != nr * np)
        throw InvalidArgument("tabulated spectral factor values do not match the grid size");
    if (!std::is_sorted(table.radii.begin(), table.radii.end()) ||
        std::adjacent_find(table.radii.begin(), table.radii.end()) != table.radii.end())
        throw InvalidArgument("tabulated radii must be strictly ascending");
    if (!std::is_sorted(table.angles.begin(), table.angles.end()) ||
        std::adjacent_find(table.angles.begin(), table.angles.end()) != table.angles.end())
        throw InvalidArgument("tabulated angles must be strictly ascending");
    if (table.radii.front() < 0.0 || table.radii.back() > 1.0 + boundary_rel_tol)
        throw InvalidArgument("tabulated radii must lie in [0, 1]");
    if (table.angles.front() < 0.0 || table.angles.back() >= two_pi)
        throw InvalidArgument("tabulated angles must lie in [0, 2 pi)");
    for (std::size_t i = 0; i < nr * np; ++i)
        if (!std::isfinite(table.a_plus[i]) || !std::isfinite(table.a_minus[i]) || table.a_plus[i] < 0.0 ||
            table.a_minus[i] < 0.0)
            throw InvalidArgument("tabulated spectral factor has a non-finite or negative entry");

    SpectralFactor f(FactorKind::tabulated, std::move(id));
    f.table_ = std::make_shared<const Table>(Table{std::move(table)});
    f.probe();
    return f;
}

SpectralFactor SpectralFactor::from_csv(std::istream &in, std::string id)
{
    std::string line;
    std::size_t lineno = 0;
    bool have_header = false;
    std::map<std::pair<double, double>, DirectionalPair> rows;

    while (std::getline(in, line))
    {
        ++lineno;
        const auto trimmed = trim(line);
        if (trimmed.empty() || trimmed.front() == '#')
            continue;
        const auto fields = split(trimmed, ',');
        if (!have_header)
        {
            static const char *expected[] = {"k_r_over_kappa", "k_phi_rad", "a_plus", "a_minus"};
            bool ok = fields.size() == 4;
            for (std::size_t i = 0; ok && i < 4; ++i)
                ok = trim(fields[i]) == expected[i];
            if (!ok)
                throw InvalidArgument("spectral factor CSV: expected header 'k_r_over_kappa,k_phi_rad,a_plus,a_minus'");
            have_header = true;
            continue;
        }
        if (fields.size() != 4)
            throw InvalidArgument("spectral factor CSV line " + std::to_string(lineno) + ": expected 4 columns");
        double v[4];
        for (int i = 0; i < 4; ++i)
            if (!parse_double(trim(fields[i]), v[i]))
                throw InvalidArgument("spectral factor CSV line " + std::to_string(lineno) + ": bad number '" +
                                      std::string(trim(fields[i])) + "'");
        if (!rows.emplace(std::make_pair(v[0], v[1]), DirectionalPair{v[2], v[3]}).second)
            throw InvalidArgument("spectral factor CSV line " + std::to_string(lineno) + ": duplicate grid point");
    }
    if (!have_header)
        throw InvalidArgument("spectral factor CSV: missing header row");
    if (rows.empty())
        throw InvalidArgument("spectral factor CSV: no data rows");

    PolarTable t;
    for (const auto &[key, _] : rows)
    {
        t.radii.push_back(key.first);
        t.angles.push_back(key.second);
    }
    std::sort(t.radii.begin(), t.radii.end());
    t.radii.erase(std::unique(t.radii.begin(), t.radii.end()), t.radii.end());
    std::sort(t.angles.begin(), t.angles.end());
    t.angles.erase(std::unique(t.angles.begin(), t.angles.end()), t.angles.end());
    if (rows.size() != t.radii.size() * t.angles.size())
        throw InvalidArgument("spectral factor CSV: rows do not form a full radius x angle grid");

    t.a_plus.resize(rows.size());
    t.a_minus.resize(rows.size());
    for (std::size_t i = 0; i < t.radii.size(); ++i)
        for (std::size_t j = 0; j < t.angles.size(); ++j)
        {
            const auto &v = rows.at({t.radii[i], t.angles[j]});
            t.a_plus[i * t.angles.size() + j] = v.plus;
            t.a_minus[i * t.angles.size() + j] = v.minus;
        }
    return tabulated(std::move(t), std::move(id));
}

SpectralFactor SpectralFactor::from_csv_file(const std::filesystem::path &path)
{
    std::ifstream in(path);
    if (!in)
        throw InvalidArgument("cannot open spectral factor file " + path.string());
    return from_csv(in, path.filename().string());
}

DirectionalPair SpectralFactor::evaluate(WavenumberPoint p, double kappa) const
{
    if (!(kappa > 0.0))
        throw InvalidArgument("kappa must be positive");
    const double r = std::sqrt(p.radius_sq());
    if (r > kappa)
    {
        p.kx *= kappa / r;
        p.ky *= kappa / r;
    }
    if (table_)
        return table_->at(std::min(r / kappa, 1.0), std::atan2(p.ky, p.kx));
    return {plus_(p, kappa), minus_(p, kappa)};
}

void SpectralFactor::probe() const
{
    constexpr int n = 64;
    constexpr double kappa = two_pi;
    for (int i = 0; i < n; ++i)
    {
        const double r = kappa * static_cast<double>(i) / (n - 1);
        for (int j = 0; j < n; ++j)
        {
            const double phi = two_pi * static_cast<double>(j) / n;
            const auto v = evaluate({r * std::cos(phi), r * std::sin(phi)}, kappa);
            if (!std::isfinite(v.plus) || !std::isfinite(v.minus))
                throw InvalidArgument("spectral factor '" + id_ + "' is not bounded on the disk");
            if (v.plus < 0.0 || v.minus < 0.0)
                throw InvalidArgument("spectral factor '" + id_ + "' is negative somewhere on the disk");
        }
    }
}

DirectionalPair plane_wave_spectrum(const SpectralFactor &f, WavenumberPoint p, double kappa)
{
    const double g = gamma(p, kappa);
    if (g / kappa < spectrum_edge_tol)
        throw BoundarySingularity("plane-wave spectrum is singular at the disk boundary");
    const auto a = f.evaluate(p, kappa);
    const double denom = 4.0 * std::numbers::pi * g;
    return {a.plus * a.plus / denom, a.minus * a.minus / denom};
}

DirectionalPair shaping_response(const SpectralFactor &f, WavenumberPoint p, double kappa)
{
    if (!in_disk(p, kappa))
        throw OutOfDisk("shaping response requested outside the propagating disk");
    if (f.kind() == FactorKind::isotropic_3d)
        return {1.0, 1.0};
    const auto a = f.evaluate(p, kappa);
    const double scale = std::sqrt(kappa) / two_pi;
    return {a.plus * scale, a.minus * scale};
}

} // namespace holo
