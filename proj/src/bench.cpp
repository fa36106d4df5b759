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

#include "holo/bench.hpp"

#include "holo/baseline.hpp"
#include "holo/errors.hpp"
#include "holo/generator.hpp"
#include "holo/text.hpp"

#include <chrono>
#include <cmath>

namespace holo
{

namespace
{

using clock_type = std::chrono::steady_clock;

double since(clock_type::time_point t0) { return std::chrono::duration<double>(clock_type::now() - t0).count(); }

// Repeats op until min_seconds have elapsed; returns seconds per call.
template <class Op>
double time_per_call(Op &&op, double min_seconds)
{
    op(0); // warm-up
    std::uint32_t calls = 0;
    const auto t0 = clock_type::now();
    double elapsed = 0.0;
    do
    {
        op(++calls);
        elapsed = since(t0);
    } while (elapsed < min_seconds);
    return elapsed / calls;
}

} // namespace

double fit_exponent(std::span<const BenchPoint> pts)
{
    if (pts.size() < 2)
        throw InvalidArgument("need at least two sizes to fit an exponent");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto &p : pts)
    {
        const double x = std::log(static_cast<double>(p.points)), y = std::log(p.seconds);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double n = static_cast<double>(pts.size());
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

BenchReport run_bench(const BenchOptions &opts)
{
    BenchReport rep;
    for (std::size_t side : opts.generator_sides)
    {
        const double len = static_cast<double>(side) / 4.0;
        FieldGenerator::Options go;
        go.method = VarianceMethod::closed_form;
        go.table_exec = opts.exec;
        const auto t0 = clock_type::now();
        const FieldGenerator gen(Aperture::planar(len, len, 0.25, 0.25), SpectralFactor::isotropic_3d(), go);
        const double setup = since(t0);
        FieldGenerator::Workspace ws;
        std::vector<std::complex<double>> out(gen.samples_per_realization());
        const double per = time_per_call([&](std::uint32_t r) { gen.realize_into(1, r, out, ws); }, opts.min_seconds);
        rep.generator.push_back({gen.samples_per_realization(), per, setup});
    }
    for (std::size_t n : opts.kl_sizes)
    {
        if (n > CorrelationMatrix::max_points)
            throw GridTooLarge("KL sweep size exceeds the dense limit");
        const auto t0 = clock_type::now();
        const auto a = Aperture::linear(static_cast<double>(n) / 16.0, 1.0 / 16.0);
        const KlSampler kl(correlation_matrix(grid_points(a), {AcfKind::bessel_2d, Wavelength::unit()}));
        const double setup = since(t0);
        std::vector<std::complex<double>> out(kl.size());
        const double per = time_per_call([&](std::uint32_t r) { kl.sample_into(1, r, out); }, opts.min_seconds);
        rep.kl.push_back({n, per, setup});
    }

    if (rep.generator.size() >= 2)
    {
        rep.generator_exponent = fit_exponent(rep.generator);
        if (!(rep.generator_exponent >= 0.9 && rep.generator_exponent <= 1.3))
            rep.failures.push_back("generator exponent " + format_double(rep.generator_exponent) +
                                   " outside [0.9, 1.3]");
    }
    if (rep.kl.size() >= 2)
    {
        rep.kl_exponent = fit_exponent(rep.kl);
        if (!(rep.kl_exponent > 1.8))
            rep.failures.push_back("KL exponent " + format_double(rep.kl_exponent) + " not above 1.8");
    }
    return rep;
}

} // namespace holo
