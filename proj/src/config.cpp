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

#include "holo/config.hpp"

#include "holo/errors.hpp"
#include "holo/text.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <limits>
#include <set>

namespace holo
{

namespace
{

struct CommandSpec
{
    const char *name;
    Command command;
    const char *help;
    std::vector<std::string> keys;
};

const std::vector<CommandSpec> &commands()
{
    static const std::vector<CommandSpec> specs{
        {"generate", Command::generate, "Draw field realizations over an aperture",
         {"aperture", "spacing", "z", "factor", "seed", "realizations", "out", "format", "method"}},
        {"variances", Command::variances, "Write the coefficient variance table", {"aperture", "out", "method"}},
        {"validate", Command::validate, "Reproduce an autocorrelation figure (6, 7 or 8)",
         {"fig", "realizations", "seed", "out"}},
        {"compare-kl", Command::compare_kl, "Compare generator and Karhunen-Loeve first-row correlations",
         {"aperture", "spacing", "realizations", "seed", "out", "max-lag"}},
        {"bench", Command::bench, "Time the generator and KL sampler over a size sweep", {"out", "quick"}},
    };
    return specs;
}

const std::map<std::string, std::string> &key_help()
{
    static const std::map<std::string, std::string> h{
        {"aperture", "Lx[,Ly[,Lz]] in wavelengths"},
        {"spacing", "dx[,dy[,dz]] in wavelengths (at most 0.5)"},
        {"z", "comma-separated z-planes in wavelengths (default: aperture z-grid)"},
        {"factor", "isotropic or a CSV file of tabulated spectral factors"},
        {"seed", "RNG seed (default 0)"},
        {"realizations", "number of realizations M"},
        {"out", "output file or directory"},
        {"format", "csv or bin"},
        {"method", "variance evaluation: quadrature or closed-form"},
        {"fig", "figure to reproduce: 6, 7 or 8"},
        {"max-lag", "largest lag in wavelengths (default 4)"},
        {"threads", "worker thread cap (default: HOLO_THREADS or all cores)"},
        {"config", "key=value file with default settings"},
    };
    return h;
}

std::vector<double> parse_list(const std::string &key, const std::string &v)
{
    std::vector<double> out;
    for (auto part : split(v, ','))
    {
        double d = 0.0;
        if (!parse_double(trim(part), d))
            throw ConfigError(key, "expected comma-separated numbers, got '" + v + "'");
        out.push_back(d);
    }
    return out;
}

unsigned long long parse_unsigned(const std::string &key, const std::string &v, unsigned long long max)
{
    unsigned long long u = 0;
    if (!parse_u64(trim(v), u) || u > max)
        throw ConfigError(key, "expected a non-negative integer up to " + std::to_string(max) + ", got '" + v + "'");
    return u;
}

bool parse_bool(const std::string &key, const std::string &v)
{
    const auto t = trim(v);
    if (t == "true" || t == "1" || t == "yes")
        return true;
    if (t == "false" || t == "0" || t == "no")
        return false;
    throw ConfigError(key, "expected true or false, got '" + v + "'");
}

std::string first_unknown_flag(int argc, const char *const *argv, const std::set<std::string> &known)
{
    for (int i = 1; i < argc; ++i)
    {
        std::string_view a = argv[i];
        if (a.size() > 2 && a.substr(0, 2) == "--")
        {
            auto name = a.substr(2);
            if (auto eq = name.find('='); eq != std::string_view::npos)
                name = name.substr(0, eq);
            if (!known.contains(std::string(name)) && name != "help")
                return std::string(a);
        }
    }
    return "";
}

} // namespace

std::map<std::string, std::string> read_config_file(std::istream &is)
{
    std::map<std::string, std::string> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(is, line))
    {
        ++lineno;
        const auto t = trim(line);
        if (t.empty() || t.front() == '#')
            continue;
        const auto eq = t.find('=');
        if (eq == std::string_view::npos)
            throw ConfigError("line " + std::to_string(lineno), "expected key = value");
        const std::string key(trim(t.substr(0, eq)));
        if (key.empty())
            throw ConfigError("line " + std::to_string(lineno), "empty key");
        if (!out.emplace(key, std::string(trim(t.substr(eq + 1)))).second)
            throw ConfigError(key, "duplicate key");
    }
    return out;
}

Aperture RunConfig::build_aperture() const
{
    if (aperture.empty() || aperture.size() > 3)
        throw ConfigError("aperture", "expected 1 to 3 lengths");
    if (spacing.size() != aperture.size())
        throw ConfigError("spacing", "expected one spacing per aperture axis");
    Aperture a;
    switch (aperture.size())
    {
    case 1: a = Aperture::linear(aperture[0], spacing[0]); break;
    case 2: a = Aperture::planar(aperture[0], aperture[1], spacing[0], spacing[1]); break;
    default:
        a = Aperture::volumetric(aperture[0], aperture[1], aperture[2], spacing[0], spacing[1], spacing[2]);
        break;
    }
    try
    {
        a.validate();
    }
    catch (const GridTooCoarse &e)
    {
        throw ConfigError("spacing", std::string("grid spacing must not exceed half a wavelength (Nyquist rule): ") +
                                         e.what());
    }
    catch (const Error &e)
    {
        throw ConfigError("aperture", e.what());
    }
    return a;
}

std::string usage()
{
    std::string s = "usage: holo <command> [--key value ...] [--config file] [--threads n]\n\ncommands:\n";
    for (const auto &c : commands())
    {
        s += "  " + std::string(c.name) + ": " + c.help + "\n   ";
        for (const auto &k : c.keys)
            s += " --" + k;
        s += "\n";
    }
    s += "\nkeys:\n";
    for (const auto &[k, h] : key_help())
        s += "  " + k + ": " + h + "\n";
    return s;
}

RunConfig parse_config(int argc, const char *const *argv)
{
    CLI::App app{"holo: Fourier plane-wave fading generator", "holo"};
    app.require_subcommand(1, 1);
    app.set_help_flag();

    std::map<std::string, std::string> raw;
    std::map<std::string, CLI::Option *> given;
    std::string config_path;
    std::map<std::string, std::pair<const CommandSpec *, CLI::App *>> subs;
    for (const auto &spec : commands())
    {
        auto *sub = app.add_subcommand(spec.name, spec.help);
        sub->set_help_flag();
        for (const auto &k : spec.keys)
        {
            auto *opt = k == "quick" ? sub->add_flag("--" + k, raw[k], key_help().count(k) ? key_help().at(k) : "")
                                     : sub->add_option("--" + k, raw[k], key_help().count(k) ? key_help().at(k) : "");
            given[spec.name + std::string(":") + k] = opt;
        }
        given[spec.name + std::string(":threads")] = sub->add_option("--threads", raw["threads"]);
        sub->add_option("--config", config_path);
        subs[spec.name] = {&spec, sub};
    }

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        // Flags are judged against the named subcommand when there is one.
        std::set<std::string> known{"threads", "config"};
        const CommandSpec *named = nullptr;
        for (const auto &c : commands())
            if (argc > 1 && c.name == std::string_view(argv[1]))
                named = &c;
        for (const auto &c : commands())
            if (!named || named == &c)
                known.insert(c.keys.begin(), c.keys.end());
        const auto bad = first_unknown_flag(argc, argv, known);
        throw ConfigError(bad.empty() ? "command line" : bad, e.what());
    }

    const CommandSpec *spec = nullptr;
    for (const auto &[name, entry] : subs)
        if (entry.second->parsed())
            spec = entry.first;
    if (!spec)
        throw ConfigError("command", "missing subcommand");

    std::set<std::string> allowed(spec->keys.begin(), spec->keys.end());
    allowed.insert("threads");
    std::map<std::string, std::string> values;
    if (!config_path.empty())
    {
        std::ifstream f(config_path);
        if (!f)
            throw ConfigError("config", "cannot open '" + config_path + "'");
        for (auto &[k, v] : read_config_file(f))
        {
            if (!allowed.contains(k))
                throw ConfigError(k, "unknown key for '" + std::string(spec->name) + "'");
            values[k] = v;
        }
    }
    for (const auto &k : allowed)
        if (given.at(spec->name + std::string(":") + k)->count() > 0)
            values[k] = k == "quick" ? "true" : raw[k];

    RunConfig cfg;
    cfg.command = spec->command;
    switch (cfg.command)
    {
    case Command::validate:
    case Command::compare_kl: cfg.realizations = 10000; break;
    default: break;
    }
    if (cfg.command == Command::compare_kl)
    {
        cfg.aperture = {16.0};
        cfg.spacing = {1.0 / 16.0};
    }

    const auto has = [&](const char *k) { return values.count(k) > 0; };
    if (has("aperture"))
        cfg.aperture = parse_list("aperture", values["aperture"]);
    if (has("spacing"))
        cfg.spacing = parse_list("spacing", values["spacing"]);
    if (has("z"))
        cfg.z_planes = parse_list("z", values["z"]);
    if (has("factor"))
        cfg.factor = values["factor"];
    if (has("seed"))
        cfg.seed = parse_unsigned("seed", values["seed"], std::numeric_limits<std::uint64_t>::max());
    if (has("realizations"))
    {
        cfg.realizations = static_cast<std::uint32_t>(
            parse_unsigned("realizations", values["realizations"], std::numeric_limits<std::uint32_t>::max()));
        if (cfg.realizations == 0)
            throw ConfigError("realizations", "must be at least 1");
    }
    if (has("out"))
        cfg.out = values["out"];
    if (has("format"))
    {
        cfg.format = values["format"];
        if (cfg.format != "csv" && cfg.format != "bin")
            throw ConfigError("format", "expected csv or bin, got '" + cfg.format + "'");
    }
    if (has("method"))
    {
        const auto &m = values["method"];
        if (m == "quadrature")
            cfg.method = VarianceMethod::quadrature;
        else if (m == "closed-form")
            cfg.method = VarianceMethod::closed_form;
        else
            throw ConfigError("method", "expected quadrature or closed-form, got '" + m + "'");
    }
    if (has("fig"))
    {
        cfg.figure = static_cast<int>(parse_unsigned("fig", values["fig"], 100));
        if (cfg.figure < 6 || cfg.figure > 8)
            throw ConfigError("fig", "expected 6, 7 or 8");
    }
    if (has("max-lag"))
    {
        double v = 0.0;
        if (!parse_double(trim(values["max-lag"]), v) || !(v > 0.0))
            throw ConfigError("max-lag", "expected a positive number");
        cfg.max_lag = v;
    }
    if (has("quick"))
        cfg.quick = parse_bool("quick", values["quick"]);
    if (has("threads"))
        cfg.threads = static_cast<int>(parse_unsigned("threads", values["threads"], 4096));
    else if (const char *env = std::getenv("HOLO_THREADS"); env && *env)
        cfg.threads = static_cast<int>(parse_unsigned("HOLO_THREADS", env, 4096));

    switch (cfg.command)
    {
    case Command::generate:
        if (cfg.aperture.empty())
            throw ConfigError("aperture", "required");
        if (cfg.spacing.empty())
            throw ConfigError("spacing", "required");
        if (cfg.out.empty())
            throw ConfigError("out", "required");
        cfg.build_aperture();
        break;
    case Command::compare_kl:
        if (cfg.build_aperture().dimension() == 3)
            throw ConfigError("aperture", "compare-kl supports linear and planar apertures");
        break;
    case Command::variances:
        if (cfg.aperture.empty() || cfg.aperture.size() > 2)
            throw ConfigError("aperture", "expected Lx or Lx,Ly");
        break;
    case Command::validate:
        if (cfg.out.empty())
            throw ConfigError("out", "required");
        break;
    case Command::bench: break;
    }
    return cfg;
}

} // namespace holo
