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
#include "holo/config.hpp"
#include "holo/errors.hpp"
#include "holo/io.hpp"

#include <gtest/gtest.h>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace holo;
namespace fs = std::filesystem;

namespace
{

RunConfig parse(std::vector<const char *> args)
{
    args.insert(args.begin(), "holo");
    return parse_config(static_cast<int>(args.size()), args.data());
}

std::string config_error_key(std::vector<const char *> args)
{
    try
    {
        parse(std::move(args));
    }
    catch (const ConfigError &e)
    {
        return e.key();
    }
    return "";
}

fs::path scratch(const std::string &name)
{
    const auto p = fs::temp_directory_path() / ("holo_test_" + std::to_string(::getpid()) + "_" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

std::string slurp(const fs::path &p)
{
    std::ifstream f(p, std::ios::binary);
    std::ostringstream s;
    s << f.rdbuf();
    return s.str();
}

int run_cli(const std::string &args)
{
    const std::string cmd = std::string("\"") + HOLO_CLI_PATH + "\" " + args + " > /dev/null 2>&1";
    const int rc = std::system(cmd.c_str());
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

class EnvGuard
{
public:
    explicit EnvGuard(const char *name) : name_(name)
    {
        if (const char *v = std::getenv(name))
            old_ = v;
    }
    ~EnvGuard()
    {
        if (old_)
            ::setenv(name_, old_->c_str(), 1);
        else
            ::unsetenv(name_);
    }

private:
    const char *name_;
    std::optional<std::string> old_;
};

} // namespace

TEST(Config, PlanarGenerate)
{
    const auto c = parse({"generate", "--aperture", "16,16", "--spacing", "0.25,0.25", "--seed", "42",
                          "--realizations", "100", "--out", "f.bin", "--format", "bin"});
    EXPECT_EQ(c.command, Command::generate);
    EXPECT_EQ(c.aperture, (std::vector<double>{16, 16}));
    EXPECT_EQ(c.seed, 42u);
    EXPECT_EQ(c.realizations, 100u);
    EXPECT_EQ(c.format, "bin");
    const auto a = c.build_aperture();
    EXPECT_EQ(a.nx(), 64u);
    EXPECT_EQ(a.ny(), 64u);
}

TEST(Config, SpacingAboveHalfWavelength)
{
    EXPECT_EQ(config_error_key({"generate", "--aperture", "16,16", "--spacing", "0.6,0.25", "--out", "x"}),
              "spacing");
    try
    {
        parse({"generate", "--aperture", "16", "--spacing", "0.6", "--out", "x"});
        FAIL();
    }
    catch (const ConfigError &e)
    {
        EXPECT_NE(std::string(e.what()).find("Nyquist"), std::string::npos);
    }
}

TEST(Config, Defaults)
{
    const auto v = parse({"validate", "--out", "d"});
    EXPECT_EQ(v.realizations, 10000u);
    EXPECT_EQ(v.figure, 6);
    const auto k = parse({"compare-kl"});
    EXPECT_EQ(k.aperture, (std::vector<double>{16.0}));
    EXPECT_EQ(k.spacing, (std::vector<double>{1.0 / 16.0}));
    EXPECT_EQ(k.max_lag, 4.0);
    EXPECT_TRUE(parse({"bench", "--quick"}).quick);
}

TEST(Config, FileWithFlagOverride)
{
    const auto dir = scratch("cfg");
    const auto path = (dir / "run.cfg").string();
    std::ofstream(path) << "# defaults\naperture = 8,8\nspacing = 0.5,0.5\nseed = 3\n\nout = a.csv\n";
    const auto c = parse({"generate", "--config", path.c_str(), "--seed", "9"});
    EXPECT_EQ(c.aperture, (std::vector<double>{8, 8}));
    EXPECT_EQ(c.seed, 9u);
    EXPECT_EQ(c.out, "a.csv");
    fs::remove_all(dir);
}

TEST(Config, UnknownKeysAreNamed)
{
    const auto dir = scratch("cfg_bad");
    const auto path = (dir / "run.cfg").string();
    std::ofstream(path) << "aperture = 8\nwavelenght = 1\n";
    EXPECT_EQ(config_error_key({"variances", "--config", path.c_str()}), "wavelenght");
    EXPECT_EQ(config_error_key({"generate", "--bogus", "1"}), "--bogus");
    EXPECT_EQ(config_error_key({"variances", "--aperture", "8", "--fig", "6"}), "--fig");
    EXPECT_EQ(config_error_key({"validate", "--out", "d", "--fig", "9"}), "fig");
    EXPECT_EQ(config_error_key({"generate", "--aperture", "8", "--spacing", "0.5", "--out", "x", "--seed", "-1"}),
              "seed");
    fs::remove_all(dir);
}

TEST(Config, FileGrammar)
{
    std::istringstream ok("a = 1\n  # c\n b=two words \n");
    const auto m = read_config_file(ok);
    EXPECT_EQ(m.at("a"), "1");
    EXPECT_EQ(m.at("b"), "two words");
    std::istringstream bad("a 1\n");
    EXPECT_THROW(read_config_file(bad), ConfigError);
    std::istringstream dup("a=1\na=2\n");
    EXPECT_THROW(read_config_file(dup), ConfigError);
}

TEST(Config, ThreadsFromEnvironment)
{
    EnvGuard g("HOLO_THREADS");
    ::setenv("HOLO_THREADS", "3", 1);
    EXPECT_EQ(parse({"bench"}).threads, 3);
    EXPECT_EQ(parse({"bench", "--threads", "2"}).threads, 2);
    ::unsetenv("HOLO_THREADS");
    EXPECT_EQ(parse({"bench"}).threads, 0);
}

TEST(Io, BinaryRoundTrip)
{
    std::stringstream s;
    BinaryWriter w(s, 2, 1, 1, 2);
    const std::vector<std::complex<double>> a{{1.5, -2.0}, {0.0, 3.25}}, b{{-1.0, 0.5}, {7.0, 8.0}};
    w.write(a);
    w.write(b);
    EXPECT_THROW(w.write(a), InvalidArgument);
    const std::string bytes = s.str();
    ASSERT_EQ(bytes.size(), 24u + 4u * 16u);
    EXPECT_EQ(bytes.substr(0, 4), "HOLO");
    EXPECT_EQ(static_cast<unsigned char>(bytes[4]), 1u); // version, little-endian
    EXPECT_EQ(static_cast<unsigned char>(bytes[8]), 2u); // Nx
    const auto d = read_binary(s);
    EXPECT_EQ(d.nx, 2u);
    EXPECT_EQ(d.m, 2u);
    EXPECT_EQ(d.samples, (std::vector<std::complex<double>>{a[0], a[1], b[0], b[1]}));
    std::istringstream junk("NOPE");
    EXPECT_THROW(read_binary(junk), InvalidArgument);
}

TEST(Io, VariancesCsv)
{
    std::ostringstream s;
    write_variances_csv(s, variances_1d(1.0, Wavelength::unit()));
    EXPECT_EQ(s.str(), "l,sigma_sq\n-1,0.25\n0,0.25\n# total_power=1\n");
}

TEST(Io, FieldCsv)
{
    const auto f = generate(Aperture::planar(1.0, 1.0, 0.5, 0.5), SpectralFactor::isotropic_3d(), 1);
    std::ostringstream s;
    write_csv_header(s);
    write_csv_rows(s, f);
    std::istringstream in(s.str());
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "realization,n,j,k,x,y,z,re,im");
    std::getline(in, line);
    EXPECT_EQ(line.rfind("0,-1,-1,0,-0.5,-0.5,0,", 0), 0u) << line;
    int rows = 1;
    while (std::getline(in, line))
        ++rows;
    EXPECT_EQ(rows, 4);
}

TEST(Io, ReportJsonAndCurve)
{
    FigureReport r;
    r.figure = 6;
    r.realizations = 10000;
    r.seed = 1;
    r.curve = {{0.0, 0.0, 1.0, 1.0}, {0.0625, 0.0, 0.9, 0.91}};
    r.metrics = {0.01, 0.02};
    r.rmse_threshold = 0.03;
    r.max_abs_threshold = 0.06;
    std::ostringstream j, c;
    write_report_json(j, r);
    write_curve_csv(c, r);
    const auto parsed = nlohmann::json::parse(j.str());
    EXPECT_EQ(parsed["figure"], 6);
    EXPECT_EQ(parsed["M"], 10000);
    EXPECT_EQ(parsed["pass"], true);
    EXPECT_DOUBLE_EQ(parsed["rmse"].get<double>(), 0.01);
    EXPECT_EQ(c.str(), "lag_over_lambda,empirical,closed_form\n0,1,1\n0.0625,0.9,0.91\n");
}

TEST(Bench, FitExponent)
{
    std::vector<BenchPoint> pts;
    for (double n : {100.0, 200.0, 400.0, 800.0})
        pts.push_back({static_cast<std::size_t>(n), 3e-9 * std::pow(n, 1.5), 0.0});
    EXPECT_NEAR(fit_exponent(pts), 1.5, 1e-12);
}

TEST(Cli, HelpAndErrors)
{
    EXPECT_EQ(run_cli("--help"), 0);
    EXPECT_EQ(run_cli("generate --aperture 16 --spacing 0.6 --out /dev/null"), 2);
    EXPECT_EQ(run_cli("frobnicate"), 2);
}

TEST(Cli, ByteIdenticalOutputs)
{
    const auto dir = scratch("cli");
    for (const char *name : {"a", "b"})
    {
        const auto csv = (dir / (std::string(name) + ".csv")).string();
        const auto bin = (dir / (std::string(name) + ".bin")).string();
        ASSERT_EQ(run_cli("generate --aperture 4,4 --spacing 0.5,0.5 --seed 5 --realizations 3 --out " + csv), 0);
        ASSERT_EQ(run_cli("generate --aperture 4,4 --spacing 0.5,0.5 --seed 5 --realizations 3 --format bin --out " +
                          bin + " --threads 1"),
                  0);
    }
    EXPECT_EQ(slurp(dir / "a.csv"), slurp(dir / "b.csv"));
    EXPECT_EQ(slurp(dir / "a.bin"), slurp(dir / "b.bin"));
    std::ifstream f(dir / "a.bin", std::ios::binary);
    const auto d = read_binary(f);
    EXPECT_EQ(d.m, 3u);
    EXPECT_EQ(d.nx, 8u);
    ASSERT_EQ(run_cli("variances --aperture 4 --out " + (dir / "v.csv").string()), 0);
    EXPECT_NE(slurp(dir / "v.csv").find("# total_power=1"), std::string::npos);
    fs::remove_all(dir);
}
