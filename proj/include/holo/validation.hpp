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

#pragma once

// Monte Carlo autocorrelation estimates and their comparison against the
// closed-form and finite-lattice oracles.

#include "holo/baseline.hpp"
#include "holo/exec.hpp"
#include "holo/generator.hpp"

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace holo
{

// Pairs (reference, target) of flattened sample positions and their lags in
// wavelength units. The first lag must be the zero lag.
struct LagSet
{
    std::size_t reference = 0;
    std::vector<std::size_t> targets;
    std::vector<double> lag_x, lag_y;

    std::size_t size() const noexcept { return targets.size(); }
};

// Lags 0 .. max_lag along x from array position (ref_n, ref_j) of plane k.
LagSet row_lags(const Aperture &a, std::size_t max_lag, std::size_t ref_n = 0, std::size_t ref_j = 0,
                std::size_t plane = 0);

// Rectangular block of lags [0, max_x] x [0, max_y] from the origin of plane k,
// x fastest.
LagSet block_lags(const Aperture &a, std::size_t max_x, std::size_t max_y, std::size_t plane = 0);

struct AcfEstimate
{
    std::vector<double> lag_x, lag_y;
    std::vector<std::complex<double>> values;
    std::size_t realizations = 0;
    std::vector<double> std_error;

    std::size_t size() const noexcept { return values.size(); }
};

// Streaming sums of h*(ref) h(target). Merging is exact and associative as
// long as blocks are merged in a fixed order.
class AcfAccumulator
{
public:
    explicit AcfAccumulator(LagSet lags);

    void add(std::span<const std::complex<double>> field);
    void merge(const AcfAccumulator &other);

    std::size_t count() const noexcept { return count_; }
    const LagSet &lags() const noexcept { return lags_; }
    const std::vector<std::complex<double>> &sums() const noexcept { return sums_; }

    // Normalized by the zero-lag sum; throws InsufficientRealizations for M < 100.
    AcfEstimate estimate() const;

private:
    LagSet lags_;
    std::vector<std::complex<double>> sums_;
    std::size_t count_ = 0;
};

constexpr std::size_t min_realizations = 100;

AcfEstimate empirical_acf(std::span<const FieldRealization> realizations, const LagSet &lags);

// Realizations 0 .. M-1 of a generator or KL sampler, accumulated in fixed
// blocks of realizations so the result is bit-identical for any thread count.
AcfEstimate empirical_acf(const FieldGenerator &gen, std::uint64_t seed, std::uint32_t realizations,
                          const LagSet &lags, Exec exec = Exec::parallel);
AcfEstimate empirical_acf(const KlSampler &kl, std::uint64_t seed, std::uint32_t realizations, const LagSet &lags,
                          Exec exec = Exec::parallel);

// Generator estimates for several lag sets from the same realizations.
std::vector<AcfEstimate> empirical_acfs(const FieldGenerator &gen, std::uint64_t seed, std::uint32_t realizations,
                                        std::span<const LagSet> lag_sets, Exec exec = Exec::parallel);

struct Comparison
{
    double rmse = 0.0;
    double max_abs_dev = 0.0;
};

// Real part of the estimate against a closed-form ACF at r = |(lag_x, lag_y)|.
Comparison compare(const AcfEstimate &est, const AcfClosedForm &oracle);
// Complex deviation from a reference curve on the same lags; throws LagMismatch otherwise.
Comparison compare(const AcfEstimate &est, std::span<const std::complex<double>> reference);
Comparison compare(const AcfEstimate &a, const AcfEstimate &b);

// Finite-lattice ACF sum 2 sigma^2 e^{i 2 pi (l dx/Lx + m dy/Ly)}, normalized to 1 at zero lag.
std::vector<std::complex<double>> lattice_acf(const CoefficientVariances2D &table, std::span<const double> lag_x,
                                              std::span<const double> lag_y);
std::vector<std::complex<double>> lattice_acf(const CoefficientVariances1D &table, std::span<const double> lag_x);

struct CurvePoint
{
    double lag_x = 0.0, lag_y = 0.0;
    double empirical = 0.0;
    double closed_form = 0.0;
};

struct FigureReport
{
    int figure = 0;
    std::size_t realizations = 0;
    std::uint64_t seed = 0;
    bool two_dimensional = false;
    std::vector<CurvePoint> curve;
    Comparison metrics;
    double rmse_threshold = 0.0;
    double max_abs_threshold = 0.0; // 0 when not checked
    // Figure 8: per-lag deviation between the migrated and z = 0 estimates.
    double plane_max_dev = 0.0;
    double plane_threshold = 0.0;
    std::vector<std::string> failures;

    bool pass() const noexcept { return failures.empty(); }
};

// First-row correlations of the generator and of the KL sampler on the same grid.
struct KlComparisonRow
{
    double lag = 0.0;
    double model = 0.0;
    double kl = 0.0;
    double closed_form = 0.0;
};

struct KlComparison
{
    std::size_t realizations = 0;
    std::vector<KlComparisonRow> rows;
    double model_vs_kl_max = 0.0; // real parts, per lag
    double threshold = 0.0;       // 6 / sqrt(M)
    Comparison model_vs_closed;
    Comparison kl_vs_closed;
    std::vector<std::string> failures;

    bool pass() const noexcept { return failures.empty(); }
};

// Lags 0 .. max_lag (wavelengths) along x. Linear apertures are compared with
// J0, planar ones with sinc; the closed-form checks use the figure 6 thresholds.
KlComparison compare_kl(const Aperture &a, std::uint32_t realizations, std::uint64_t seed, double max_lag = 4.0,
                        Exec exec = Exec::parallel);

// Figure 6: line 16 x 1/16 vs J0 over [0, 4]. Figure 7: plane 16 x 16 at 1/4
// vs sinc over the quarter lag range. Figure 8: same plane migrated to z = 1/2.
FigureReport run_figure(int figure, std::uint32_t realizations, std::uint64_t seed, Exec exec = Exec::parallel);

} // namespace holo
