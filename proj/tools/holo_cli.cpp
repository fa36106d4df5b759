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

// holo: command-line front end for the plane-wave fading generator.

#include "holo/baseline.hpp"
#include "holo/bench.hpp"
#include "holo/config.hpp"
#include "holo/errors.hpp"
#include "holo/exec.hpp"
#include "holo/io.hpp"
#include "holo/text.hpp"
#include "holo/validation.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string_view>

namespace
{

using namespace holo;

std::ofstream open_out(const std::string &path, std::ios::openmode mode = std::ios::out)
{
    std::ofstream f(path, mode);
    if (!f)
        throw Error("cannot open '" + path + "' for writing");
    return f;
}

SpectralFactor load_factor(const std::string &spec)
{
    if (spec == "isotropic")
        return SpectralFactor::isotropic_3d();
    return SpectralFactor::from_csv_file(spec);
}

int cmd_generate(const RunConfig &cfg)
{
    const auto a = cfg.build_aperture();
    FieldGenerator::Options opts;
    opts.z_planes = cfg.z_planes;
    opts.method = cfg.method;
    const FieldGenerator gen(a, load_factor(cfg.factor), opts);

    if (cfg.format == "bin")
    {
        auto f = open_out(cfg.out, std::ios::out | std::ios::binary);
        BinaryWriter w(f, static_cast<std::uint32_t>(a.nx()), static_cast<std::uint32_t>(a.ny()),
                       static_cast<std::uint32_t>(gen.z_planes().size()), cfg.realizations);
        FieldGenerator::Workspace ws;
        std::vector<cplx> buf(gen.samples_per_realization());
        for (std::uint32_t r = 0; r < cfg.realizations; ++r)
        {
            gen.realize_into(cfg.seed, r, buf, ws);
            w.write(buf);
        }
    }
    else
    {
        auto f = open_out(cfg.out);
        write_csv_header(f);
        for (std::uint32_t r = 0; r < cfg.realizations; ++r)
            write_csv_rows(f, gen.realize(cfg.seed, r));
    }
    return 0;
}

int cmd_variances(const RunConfig &cfg)
{
    const auto w = Wavelength::unit();
    std::ofstream file;
    std::ostream *os = &std::cout;
    if (!cfg.out.empty() && cfg.out != "-")
    {
        file = open_out(cfg.out);
        os = &file;
    }
    if (cfg.aperture.size() == 1)
        write_variances_csv(*os, variances_1d(cfg.aperture[0], w));
    else
        write_variances_csv(*os, variances_2d(cfg.aperture[0], cfg.aperture[1], w, cfg.method));
    return 0;
}

int cmd_validate(const RunConfig &cfg)
{
    const auto rep = run_figure(cfg.figure, cfg.realizations, cfg.seed);
    std::filesystem::create_directories(cfg.out);
    const std::filesystem::path dir(cfg.out);
    {
        auto f = open_out((dir / "curve.csv").string());
        write_curve_csv(f, rep);
    }
    {
        auto f = open_out((dir / "report.json").string());
        write_report_json(f, rep);
    }
    std::cout << "figure " << rep.figure << ": rmse=" << format_double(rep.metrics.rmse)
              << " max_abs_dev=" << format_double(rep.metrics.max_abs_dev) << " M=" << rep.realizations << ' '
              << (rep.pass() ? "PASS" : "FAIL") << '\n';
    for (const auto &msg : rep.failures)
        std::cout << "failure: " << msg << '\n';
    return rep.pass() ? 0 : 1;
}

int cmd_compare_kl(const RunConfig &cfg)
{
    const auto res = compare_kl(cfg.build_aperture(), cfg.realizations, cfg.seed, cfg.max_lag);
    std::ofstream file;
    std::ostream *os = &std::cout;
    if (!cfg.out.empty() && cfg.out != "-")
    {
        file = open_out(cfg.out);
        os = &file;
    }
    write_compare_kl_csv(*os, res.rows);
    std::cerr << "model vs KL max deviation " << format_double(res.model_vs_kl_max) << " (threshold "
              << format_double(res.threshold) << ")\n";
    for (const auto &msg : res.failures)
        std::cerr << "failure: " << msg << '\n';
    return res.pass() ? 0 : 1;
}

int cmd_bench(const RunConfig &cfg)
{
    BenchOptions opts;
    if (cfg.quick)
    {
        opts.generator_sides = {32, 64, 128, 256};
        opts.kl_sizes = {128, 256, 512};
        opts.min_seconds = 0.05;
    }
    const auto rep = run_bench(opts);
    std::ofstream file;
    std::ostream *os = &std::cout;
    if (!cfg.out.empty() && cfg.out != "-")
    {
        file = open_out(cfg.out);
        os = &file;
    }
    *os << "method,points,seconds_per_realization,setup_seconds\n";
    for (const auto &p : rep.generator)
        *os << "generator," << p.points << ',' << format_double(p.seconds) << ',' << format_double(p.setup_seconds)
            << '\n';
    for (const auto &p : rep.kl)
        *os << "kl," << p.points << ',' << format_double(p.seconds) << ',' << format_double(p.setup_seconds) << '\n';
    std::cerr << "generator exponent " << format_double(rep.generator_exponent) << ", KL exponent "
              << format_double(rep.kl_exponent) << '\n';
    for (const auto &msg : rep.failures)
        std::cerr << "failure: " << msg << '\n';
    return rep.pass() ? 0 : 1;
}

} // namespace

int main(int argc, char **argv)
{
    for (int i = 1; i < argc; ++i)
    {
        const std::string_view a = argv[i];
        if (a == "--help" || a == "-h")
        {
            std::cout << holo::usage();
            return 0;
        }
    }
    try
    {
        const auto cfg = holo::parse_config(argc, argv);
        holo::set_thread_count(cfg.threads);
        switch (cfg.command)
        {
        case holo::Command::generate: return cmd_generate(cfg);
        case holo::Command::variances: return cmd_variances(cfg);
        case holo::Command::validate: return cmd_validate(cfg);
        case holo::Command::compare_kl: return cmd_compare_kl(cfg);
        case holo::Command::bench: return cmd_bench(cfg);
        }
    }
    catch (const holo::ConfigError &e)
    {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}
