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

#include "holo/validation.hpp"

#include "holo/errors.hpp"
#include "holo/text.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace holo
{

namespace
{

constexpr std::size_t block_size = 64;

double axis_step(double length, std::size_t n) { return n > 0 && length > 0.0 ? length / static_cast<double>(n) : 0.0; }

// Runs fill(r, buffer) for r = 0 .. M-1 and accumulates every lag set. Blocks of
// realizations are reduced independently and merged in block order.
template <class MakeFill>
std::vector<AcfEstimate> accumulate(std::size_t samples, std::uint32_t realizations, std::span<const LagSet> sets,
                                    Exec exec, MakeFill make_fill)
{
    if (realizations < min_realizations)
        throw InsufficientRealizations("need at least " + std::to_string(min_realizations) + " realizations, got " +
                                       std::to_string(realizations));
    for (const auto &s : sets)
    {
        if (s.reference >= samples)
            throw InvalidArgument("reference point outside the field");
        for (auto t : s.targets)
            if (t >= samples)
                throw InvalidArgument("lag target outside the field");
    }

    const std::size_t blocks = (realizations + block_size - 1) / block_size;
    std::vector<std::vector<AcfAccumulator>> partial(blocks);
    auto run_block = [&](std::size_t b) {
        auto fill = make_fill();
        std::vector<std::complex<double>> field(samples);
        std::vector<AcfAccumulator> acc;
        acc.reserve(sets.size());
        for (const auto &s : sets)
            acc.emplace_back(s);
        const std::size_t end = std::min<std::size_t>((b + 1) * block_size, realizations);
        for (std::size_t r = b * block_size; r < end; ++r)
        {
            fill(static_cast<std::uint32_t>(r), std::span<std::complex<double>>(field));
            for (auto &a : acc)
                a.add(field);
        }
        partial[b] = std::move(acc);
    };

    if (exec == Exec::serial)
    {
        for (std::size_t b = 0; b < blocks; ++b)
            run_block(b);
    }
    else
    {
        ExceptionSink sink;
        const auto nb = static_cast<std::int64_t>(blocks);
#pragma omp parallel for schedule(dynamic, 1)
        for (std::int64_t b = 0; b < nb; ++b)
            sink.run([&] { run_block(static_cast<std::size_t>(b)); });
        sink.rethrow();
    }

    std::vector<AcfEstimate> out;
    for (std::size_t i = 0; i < sets.size(); ++i)
    {
        AcfAccumulator total(sets[i]);
        for (const auto &p : partial)
            total.merge(p[i]);
        out.push_back(total.estimate());
    }
    return out;
}

Comparison summarize(std::span<const double> deviations)
{
    Comparison c;
    if (deviations.empty())
        return c;
    double sq = 0.0;
    for (double d : deviations)
    {
        sq += d * d;
        c.max_abs_dev = std::max(c.max_abs_dev, std::fabs(d));
    }
    c.rmse = std::sqrt(sq / static_cast<double>(deviations.size()));
    return c;
}

} // namespace

LagSet row_lags(const Aperture &a, std::size_t max_lag, std::size_t ref_n, std::size_t ref_j, std::size_t plane)
{
    const std::size_t nx = a.nx(), ny = a.ny();
    if (ref_n + max_lag >= nx || ref_j >= ny)
        throw InvalidArgument("lag range exceeds the grid");
    const double sx = axis_step(a.lx, nx);
    LagSet s;
    const std::size_t base = (plane * ny + ref_j) * nx;
    s.reference = base + ref_n;
    for (std::size_t k = 0; k <= max_lag; ++k)
    {
        s.targets.push_back(base + ref_n + k);
        s.lag_x.push_back(static_cast<double>(k) * sx);
        s.lag_y.push_back(0.0);
    }
    return s;
}

LagSet block_lags(const Aperture &a, std::size_t max_x, std::size_t max_y, std::size_t plane)
{
    const std::size_t nx = a.nx(), ny = a.ny();
    if (max_x >= nx || max_y >= ny)
        throw InvalidArgument("lag range exceeds the grid");
    const double sx = axis_step(a.lx, nx), sy = axis_step(a.ly, ny);
    LagSet s;
    const std::size_t base = plane * ny * nx;
    s.reference = base;
    for (std::size_t j = 0; j <= max_y; ++j)
        for (std::size_t k = 0; k <= max_x; ++k)
        {
            s.targets.push_back(base + j * nx + k);
            s.lag_x.push_back(static_cast<double>(k) * sx);
            s.lag_y.push_back(static_cast<double>(j) * sy);
        }
    return s;
}

AcfAccumulator::AcfAccumulator(LagSet lags) : lags_(std::move(lags)), sums_(lags_.size())
{
    if (lags_.targets.empty() || lags_.targets.front() != lags_.reference)
        throw InvalidArgument("the first lag must be the zero lag");
    if (lags_.lag_x.size() != lags_.size() || lags_.lag_y.size() != lags_.size())
        throw InvalidArgument("lag coordinates do not match the targets");
}

void AcfAccumulator::add(std::span<const std::complex<double>> field)
{
    const auto ref = std::conj(field[lags_.reference]);
    for (std::size_t i = 0; i < sums_.size(); ++i)
        sums_[i] += ref * field[lags_.targets[i]];
    ++count_;
}

void AcfAccumulator::merge(const AcfAccumulator &other)
{
    if (other.lags_.targets != lags_.targets || other.lags_.reference != lags_.reference)
        throw LagMismatch("cannot merge accumulators over different lags");
    for (std::size_t i = 0; i < sums_.size(); ++i)
        sums_[i] += other.sums_[i];
    count_ += other.count_;
}

AcfEstimate AcfAccumulator::estimate() const
{
    if (count_ < min_realizations)
        throw InsufficientRealizations("need at least " + std::to_string(min_realizations) + " realizations, got " +
                                       std::to_string(count_));
    AcfEstimate e;
    e.lag_x = lags_.lag_x;
    e.lag_y = lags_.lag_y;
    e.realizations = count_;
    const double zero = sums_.front().real();
    if (!(zero > 0.0))
        throw InvalidArgument("zero-lag power is not positive");
    e.values.resize(sums_.size());
    for (std::size_t i = 0; i < sums_.size(); ++i)
        e.values[i] = sums_[i] / zero;
    e.values.front() = 1.0;
    e.std_error.assign(sums_.size(), 1.0 / std::sqrt(static_cast<double>(count_)));
    return e;
}

AcfEstimate empirical_acf(std::span<const FieldRealization> realizations, const LagSet &lags)
{
    AcfAccumulator acc(lags);
    for (const auto &f : realizations)
    {
        if (lags.reference >= f.samples.size() ||
            *std::max_element(lags.targets.begin(), lags.targets.end()) >= f.samples.size())
            throw InvalidArgument("lag target outside the field");
        acc.add(f.samples);
    }
    return acc.estimate();
}

std::vector<AcfEstimate> empirical_acfs(const FieldGenerator &gen, std::uint64_t seed, std::uint32_t realizations,
                                        std::span<const LagSet> lag_sets, Exec exec)
{
    return accumulate(gen.samples_per_realization(), realizations, lag_sets, exec, [&gen, seed] {
        return [&gen, seed, ws = FieldGenerator::Workspace{}](std::uint32_t r,
                                                              std::span<std::complex<double>> out) mutable {
            gen.realize_into(seed, r, out, ws);
        };
    });
}

AcfEstimate empirical_acf(const FieldGenerator &gen, std::uint64_t seed, std::uint32_t realizations,
                          const LagSet &lags, Exec exec)
{
    return empirical_acfs(gen, seed, realizations, std::span<const LagSet>(&lags, 1), exec).front();
}

AcfEstimate empirical_acf(const KlSampler &kl, std::uint64_t seed, std::uint32_t realizations, const LagSet &lags,
                          Exec exec)
{
    return accumulate(kl.size(), realizations, std::span<const LagSet>(&lags, 1), exec, [&kl, seed] {
        return [&kl, seed](std::uint32_t r, std::span<std::complex<double>> out) { kl.sample_into(seed, r, out); };
    }).front();
}

Comparison compare(const AcfEstimate &est, const AcfClosedForm &oracle)
{
    if (est.lag_x.size() != est.size() || est.lag_y.size() != est.size())
        throw LagMismatch("estimate lags do not match its values");
    std::vector<double> dev(est.size());
    for (std::size_t i = 0; i < est.size(); ++i)
        dev[i] = est.values[i].real() - oracle(std::hypot(est.lag_x[i], est.lag_y[i]));
    return summarize(dev);
}

Comparison compare(const AcfEstimate &est, std::span<const std::complex<double>> reference)
{
    if (reference.size() != est.size())
        throw LagMismatch("reference has " + std::to_string(reference.size()) + " lags, estimate has " +
                          std::to_string(est.size()));
    std::vector<double> dev(est.size());
    for (std::size_t i = 0; i < est.size(); ++i)
        dev[i] = std::abs(est.values[i] - reference[i]);
    return summarize(dev);
}

Comparison compare(const AcfEstimate &a, const AcfEstimate &b)
{
    if (a.lag_x != b.lag_x || a.lag_y != b.lag_y)
        throw LagMismatch("estimates are on different lag grids");
    return compare(a, b.values);
}

std::vector<std::complex<double>> lattice_acf(const CoefficientVariances2D &table, std::span<const double> lag_x,
                                              std::span<const double> lag_y)
{
    if (lag_x.size() != lag_y.size())
        throw LagMismatch("lag_x and lag_y differ in length");
    std::vector<std::complex<double>> out(lag_x.size());
    const double total = total_power(table);
    for (std::size_t k = 0; k < out.size(); ++k)
    {
        std::complex<double> s{};
        for (std::size_t i = 0; i < table.size(); ++i)
        {
            const auto idx = table.indices()[i];
            const double phase = two_pi * (static_cast<double>(idx.l) * lag_x[k] / table.lx() +
                                           static_cast<double>(idx.m) * lag_y[k] / table.ly());
            s += 2.0 * table.sigma_sq()[i] * std::polar(1.0, phase);
        }
        out[k] = s / total;
    }
    return out;
}

std::vector<std::complex<double>> lattice_acf(const CoefficientVariances1D &table, std::span<const double> lag_x)
{
    std::vector<std::complex<double>> out(lag_x.size());
    const double total = total_power(table);
    const double lx = static_cast<double>(table.n);
    for (std::size_t k = 0; k < out.size(); ++k)
    {
        std::complex<double> s{};
        for (std::int64_t l = table.l_min(); l <= table.l_max(); ++l)
            s += 2.0 * table.at(l) * std::polar(1.0, two_pi * static_cast<double>(l) * lag_x[k] / lx);
        out[k] = s / total;
    }
    return out;
}

FigureReport run_figure(int figure, std::uint32_t realizations, std::uint64_t seed, Exec exec)
{
    FigureReport rep;
    rep.figure = figure;
    rep.realizations = realizations;
    rep.seed = seed;
    const double inv_sqrt_m = 1.0 / std::sqrt(static_cast<double>(std::max<std::uint32_t>(realizations, 1)));

    FieldGenerator::Options opts;
    opts.table_exec = exec;
    AcfEstimate est;
    AcfClosedForm oracle;

    if (figure == 6)
    {
        const auto a = Aperture::linear(16.0, 1.0 / 16.0);
        const FieldGenerator gen(a, SpectralFactor::isotropic_3d(), opts);
        est = empirical_acf(gen, seed, realizations, row_lags(a, a.nx() / 4), exec);
        oracle.kind = AcfKind::bessel_2d;
        rep.rmse_threshold = 0.03;
        rep.max_abs_threshold = 0.06;
    }
    else if (figure == 7 || figure == 8)
    {
        const auto a = Aperture::planar(16.0, 16.0, 0.25, 0.25);
        const std::size_t qx = a.nx() / 4, qy = a.ny() / 4;
        rep.two_dimensional = true;
        rep.rmse_threshold = 0.03;
        oracle.kind = AcfKind::sinc_3d;
        if (figure == 7)
        {
            const FieldGenerator gen(a, SpectralFactor::isotropic_3d(), opts);
            est = empirical_acf(gen, seed, realizations, block_lags(a, qx, qy), exec);
        }
        else
        {
            opts.z_planes = {0.0, 0.5};
            const FieldGenerator gen(a, SpectralFactor::isotropic_3d(), opts);
            const std::vector<LagSet> sets{block_lags(a, qx, qy, 0), block_lags(a, qx, qy, 1)};
            auto both = empirical_acfs(gen, seed, realizations, sets, exec);
            est = std::move(both[1]);
            rep.plane_max_dev = compare(est, both[0]).max_abs_dev;
            rep.plane_threshold = 8.0 * inv_sqrt_m;
            if (!(rep.plane_max_dev < rep.plane_threshold))
                rep.failures.push_back("z=0.5 vs z=0 max deviation " + format_double(rep.plane_max_dev) + " >= " +
                                       format_double(rep.plane_threshold));
        }
    }
    else
        throw InvalidArgument("figure must be 6, 7 or 8");

    rep.metrics = compare(est, oracle);
    if (!(rep.metrics.rmse < rep.rmse_threshold))
        rep.failures.push_back("rmse " + format_double(rep.metrics.rmse) + " >= " + format_double(rep.rmse_threshold));
    if (rep.max_abs_threshold > 0.0 && !(rep.metrics.max_abs_dev < rep.max_abs_threshold))
        rep.failures.push_back("max_abs_dev " + format_double(rep.metrics.max_abs_dev) + " >= " + format_double(rep.max_abs_threshold));

    rep.curve.reserve(est.size());
    for (std::size_t i = 0; i < est.size(); ++i)
        rep.curve.push_back({est.lag_x[i], est.lag_y[i], est.values[i].real(),
                             oracle(std::hypot(est.lag_x[i], est.lag_y[i]))});
    return rep;
}

KlComparison compare_kl(const Aperture &a, std::uint32_t realizations, std::uint64_t seed, double max_lag, Exec exec)
{
    if (a.dimension() == 3)
        throw InvalidArgument("compare-kl supports linear and planar apertures");
    KlComparison out;
    out.realizations = realizations;
    out.threshold = 6.0 / std::sqrt(static_cast<double>(std::max<std::uint32_t>(realizations, 1)));

    const AcfClosedForm oracle{a.dimension() == 1 ? AcfKind::bessel_2d : AcfKind::sinc_3d, Wavelength::unit()};
    const double sx = a.lx / static_cast<double>(a.nx());
    const auto steps = static_cast<std::size_t>(std::floor(max_lag / sx + 1e-9));
    const LagSet lags = row_lags(a, std::min(steps, a.nx() - 1));

    FieldGenerator::Options opts;
    opts.table_exec = exec;
    const FieldGenerator gen(a, SpectralFactor::isotropic_3d(), opts);
    const auto model = empirical_acf(gen, seed, realizations, lags, exec);

    const auto pts = grid_points(a);
    const KlSampler kl(correlation_matrix(pts, oracle));
    const auto base = empirical_acf(kl, seed, realizations, lags, exec);

    out.model_vs_closed = compare(model, oracle);
    out.kl_vs_closed = compare(base, oracle);
    for (std::size_t i = 0; i < lags.size(); ++i)
    {
        const double c = oracle(lags.lag_x[i]);
        out.rows.push_back({lags.lag_x[i], model.values[i].real(), base.values[i].real(), c});
        out.model_vs_kl_max =
            std::max(out.model_vs_kl_max, std::fabs(model.values[i].real() - base.values[i].real()));
    }

    if (!(out.model_vs_kl_max < out.threshold))
        out.failures.push_back("model vs KL max deviation " + format_double(out.model_vs_kl_max) +
                               " >= " + format_double(out.threshold));
    const auto check = [&](const char *name, const Comparison &c) {
        if (!(c.rmse < 0.03))
            out.failures.push_back(std::string(name) + " rmse " + format_double(c.rmse) + " >= 0.03");
        if (!(c.max_abs_dev < 0.06))
            out.failures.push_back(std::string(name) + " max_abs_dev " + format_double(c.max_abs_dev) + " >= 0.06");
    };
    check("model", out.model_vs_closed);
    check("KL", out.kl_vs_closed);
    return out;
}

} // namespace holo
