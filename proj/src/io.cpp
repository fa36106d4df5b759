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

#include "holo/io.hpp"

#include "holo/errors.hpp"
#include "holo/text.hpp"

#include <json.hpp>

#include <array>
#include <bit>
#include <cstring>

namespace holo
{

namespace
{

void put_u32(std::ostream &os, std::uint32_t v)
{
    const std::array<char, 4> b{static_cast<char>(v & 0xff), static_cast<char>((v >> 8) & 0xff),
                                static_cast<char>((v >> 16) & 0xff), static_cast<char>((v >> 24) & 0xff)};
    os.write(b.data(), 4);
}

std::uint32_t get_u32(std::istream &is)
{
    std::array<unsigned char, 4> b{};
    if (!is.read(reinterpret_cast<char *>(b.data()), 4))
        throw InvalidArgument("truncated binary header");
    return static_cast<std::uint32_t>(b[0]) | static_cast<std::uint32_t>(b[1]) << 8 |
           static_cast<std::uint32_t>(b[2]) << 16 | static_cast<std::uint32_t>(b[3]) << 24;
}

void put_f64(std::ostream &os, double v)
{
    auto bits = std::bit_cast<std::uint64_t>(v);
    std::array<char, 8> b{};
    for (auto &c : b)
    {
        c = static_cast<char>(bits & 0xff);
        bits >>= 8;
    }
    os.write(b.data(), 8);
}

double get_f64(std::istream &is)
{
    std::array<unsigned char, 8> b{};
    if (!is.read(reinterpret_cast<char *>(b.data()), 8))
        throw InvalidArgument("truncated binary payload");
    std::uint64_t bits = 0;
    for (int i = 7; i >= 0; --i)
        bits = bits << 8 | b[static_cast<std::size_t>(i)];
    return std::bit_cast<double>(bits);
}

std::string num(double v) { return format_double(v); }

} // namespace

BinaryWriter::BinaryWriter(std::ostream &os, std::uint32_t nx, std::uint32_t ny, std::uint32_t nz, std::uint32_t m)
    : os_(os), per_realization_(static_cast<std::size_t>(nx) * ny * nz), m_(m)
{
    os_.write("HOLO", 4);
    put_u32(os_, binary_version);
    put_u32(os_, nx);
    put_u32(os_, ny);
    put_u32(os_, nz);
    put_u32(os_, m);
}

void BinaryWriter::write(std::span<const std::complex<double>> samples)
{
    if (samples.size() != per_realization_)
        throw InvalidArgument("realization size does not match the header");
    if (written_ == m_)
        throw InvalidArgument("more realizations than announced in the header");
    for (const auto &z : samples)
    {
        put_f64(os_, z.real());
        put_f64(os_, z.imag());
    }
    ++written_;
}

BinaryData read_binary(std::istream &is)
{
    std::array<char, 4> magic{};
    if (!is.read(magic.data(), 4) || std::memcmp(magic.data(), "HOLO", 4) != 0)
        throw InvalidArgument("not a HOLO binary stream");
    if (get_u32(is) != binary_version)
        throw InvalidArgument("unsupported binary version");
    BinaryData d;
    d.nx = get_u32(is);
    d.ny = get_u32(is);
    d.nz = get_u32(is);
    d.m = get_u32(is);
    const std::size_t count = static_cast<std::size_t>(d.nx) * d.ny * d.nz * d.m;
    d.samples.resize(count);
    for (auto &z : d.samples)
    {
        const double re = get_f64(is);
        z = {re, get_f64(is)};
    }
    return d;
}

void write_csv_header(std::ostream &os) { os << "realization,n,j,k,x,y,z,re,im\n"; }

void write_csv_rows(std::ostream &os, const FieldRealization &f)
{
    const double sx = f.aperture.lx / static_cast<double>(f.nx);
    const double sy = f.ny > 1 ? f.aperture.ly / static_cast<double>(f.ny) : 0.0;
    const auto half_x = static_cast<std::int64_t>(f.nx / 2);
    const auto half_y = static_cast<std::int64_t>(f.ny > 1 ? f.ny / 2 : 0);
    for (std::size_t k = 0; k < f.nz; ++k)
        for (std::size_t j = 0; j < f.ny; ++j)
            for (std::size_t n = 0; n < f.nx; ++n)
            {
                const auto &z = f.at(n, j, k);
                const auto cn = static_cast<std::int64_t>(n) - half_x;
                const auto cj = static_cast<std::int64_t>(j) - half_y;
                os << f.realization << ',' << cn << ',' << cj << ',' << k << ',' << num(static_cast<double>(cn) * sx)
                   << ',' << num(static_cast<double>(cj) * sy) << ',' << num(f.z_planes[k]) << ',' << num(z.real())
                   << ',' << num(z.imag()) << '\n';
            }
}

void write_variances_csv(std::ostream &os, const CoefficientVariances2D &t)
{
    os << "l,m,sigma_sq\n";
    for (std::size_t i = 0; i < t.size(); ++i)
        os << t.indices()[i].l << ',' << t.indices()[i].m << ',' << num(t.sigma_sq()[i]) << '\n';
    os << "# total_power=" << num(total_power(t)) << '\n';
}

void write_variances_csv(std::ostream &os, const CoefficientVariances1D &t)
{
    os << "l,sigma_sq\n";
    for (std::int64_t l = t.l_min(); l <= t.l_max(); ++l)
        os << l << ',' << num(t.at(l)) << '\n';
    os << "# total_power=" << num(total_power(t)) << '\n';
}

void write_curve_csv(std::ostream &os, const FigureReport &rep)
{
    os << (rep.two_dimensional ? "lag_over_lambda,lag_y_over_lambda,empirical,closed_form\n"
                               : "lag_over_lambda,empirical,closed_form\n");
    for (const auto &p : rep.curve)
    {
        os << num(p.lag_x) << ',';
        if (rep.two_dimensional)
            os << num(p.lag_y) << ',';
        os << num(p.empirical) << ',' << num(p.closed_form) << '\n';
    }
}

void write_report_json(std::ostream &os, const FigureReport &rep)
{
    nlohmann::ordered_json j;
    j["figure"] = rep.figure;
    j["rmse"] = rep.metrics.rmse;
    j["max_abs_dev"] = rep.metrics.max_abs_dev;
    j["M"] = rep.realizations;
    j["seed"] = rep.seed;
    j["pass"] = rep.pass();
    j["rmse_threshold"] = rep.rmse_threshold;
    if (rep.max_abs_threshold > 0.0)
        j["max_abs_threshold"] = rep.max_abs_threshold;
    if (rep.plane_threshold > 0.0)
    {
        j["plane_max_dev"] = rep.plane_max_dev;
        j["plane_threshold"] = rep.plane_threshold;
    }
    j["failures"] = rep.failures;
    os << j.dump(2) << '\n';
}

void write_compare_kl_csv(std::ostream &os, std::span<const KlComparisonRow> rows)
{
    os << "lag_over_lambda,model_estimate,kl_estimate,closed_form\n";
    for (const auto &r : rows)
        os << num(r.lag) << ',' << num(r.model) << ',' << num(r.kl) << ',' << num(r.closed_form) << '\n';
}

} // namespace holo
