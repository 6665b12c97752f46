// Copyright 2026 The entlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "entlab/common.hpp"
#include "entlab/qmath/random.hpp"
#include "entlab/sigsub/sigsub.hpp"
#include "entlab/spectrum/class_spectrum.hpp"
#include "entlab/spectrum/gaussian.hpp"

namespace {

using namespace entlab;
using namespace entlab::sigsub;
using spectrum::BaseSpectrum;
using spectrum::tensor_power_spectrum;

const BaseSpectrum kQuarter = BaseSpectrum::from_probs({0.75, 0.25});

TEST(SigDim, MaximallyMixedHalf) {
    for (int d : {1, 2, 5, 8}) {
        const auto r = sig_dim(qmath::DensityMatrix::maximally_mixed(d), 0.5);
        ASSERT_TRUE(r.dimension.exact.has_value());
        EXPECT_EQ(*r.dimension.exact, static_cast<std::uint64_t>((d + 1) / 2)) << d;
    }
}

TEST(SigDim, PureStateIsOne) {
    qmath::Rng rng(3);
    const auto rho = qmath::DensityMatrix::from_pure(qmath::random_unit_vector(rng, 4));
    for (double delta : {0.1, 0.5, 1.0}) EXPECT_EQ(*sig_dim(rho, delta).dimension.exact, 1u);
}

TEST(SigDim, CumulativeSums) {
    const std::vector<double> ev{9.0 / 16, 3.0 / 16, 3.0 / 16, 1.0 / 16};
    const auto r = sig_dim(ev, 0.6);
    EXPECT_EQ(*r.dimension.exact, 2u);
    EXPECT_NEAR(r.achieved_mass, 0.75, 1e-15);
    EXPECT_EQ(*sig_dim(ev, 1.0).dimension.exact, 4u);
}

TEST(SigDim, ZeroDeltaAndRangeErrors) {
    const std::vector<double> ev{0.5, 0.5};
    const auto r = sig_dim(ev, 0.0);
    EXPECT_TRUE(r.dimension.is_zero());
    EXPECT_EQ(r.achieved_mass, 0.0);
    EXPECT_THROW(sig_dim(ev, 1.5), ValidationError);
    EXPECT_THROW(sig_dim(ev, -0.1), ValidationError);
}

TEST(SigDim, ClassSpectrumMatchesOracle) {
    const auto s64 = sig_dim(tensor_power_spectrum(kQuarter, 64), 0.5);
    ASSERT_TRUE(s64.dimension.exact.has_value());
    EXPECT_EQ(*s64.dimension.exact, 428931625136651ull);
    EXPECT_GE(s64.achieved_mass, 0.5);
    EXPECT_NEAR(sig_dim(tensor_power_spectrum(kQuarter, 100), 0.95).dimension.log2, 87.558357824502201, 1e-9);
    EXPECT_NEAR(sig_dim(tensor_power_spectrum(kQuarter, 1000), 0.95).dimension.log2, 840.20832635923881, 1e-9);
}

TEST(SigDim, ClassSpectrumMatchesExplicitEigenvalues) {
    const int n = 6;
    const auto spec = tensor_power_spectrum(kQuarter, n);
    std::vector<double> ev;
    for (int mask = 0; mask < (1 << n); ++mask) {
        double v = 1.0;
        for (int i = 0; i < n; ++i) v *= (mask >> i & 1) ? 0.25 : 0.75;
        ev.push_back(v);
    }
    for (double delta : {0.05, 0.3, 0.5, 0.77, 0.95, 1.0})
        EXPECT_EQ(*sig_dim(spec, delta).dimension.exact, *sig_dim(ev, delta).dimension.exact) << delta;
}

TEST(SigDim, NondecreasingInDelta) {
    const auto spec = tensor_power_spectrum(kQuarter, 200);
    double prev = kNegInf;
    for (int i = 1; i <= 100; ++i) {
        const double bits = sig_dim(spec, i / 100.0).dimension.log2;
        EXPECT_GE(bits, prev);
        prev = bits;
    }
}

TEST(SigDim, AntitoneInMajorization) {
    qmath::Rng rng(11);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int trial = 0; trial < 300; ++trial) {
        const int d = 2 + trial % 9;
        const auto r = qmath::random_spectrum(rng, d);
        // Moving mass from the bottom entry to the top majorizes r.
        auto q = r;
        const double shift = unif(rng) * q.back();
        q.front() += shift;
        q.back() -= shift;
        const double delta = unif(rng);
        EXPECT_LE(*sig_dim(q, delta).dimension.exact, *sig_dim(r, delta).dimension.exact);
    }
}

TEST(SupportRankBound, Examples) {
    const auto rho = qmath::DensityMatrix::diagonal(std::vector<double>{0.5, 0.3, 0.2});
    const auto same = check_support_rank_bound(rho, rho, 1.0);
    EXPECT_TRUE(same.holds);
    EXPECT_EQ(same.lhs, 3);
    EXPECT_EQ(same.rhs, 3u);

    const auto mixed = qmath::DensityMatrix::maximally_mixed(2);
    const auto zero = qmath::DensityMatrix::diagonal(std::vector<double>{1.0, 0.0});
    const auto c = check_support_rank_bound(mixed, zero, 0.5);
    EXPECT_TRUE(c.hypothesis_ok);
    EXPECT_TRUE(c.holds);
    EXPECT_EQ(c.lhs, 1);
    EXPECT_EQ(c.rhs, 1u);
    EXPECT_NEAR(c.distance, 1.0, 1e-15);
}

TEST(SupportRankBound, RandomInstancesHold) {
    qmath::Rng rng(2026);
    for (int trial = 0; trial < 1000; ++trial) {
        const auto inst = random_support_rank_instance(rng, 12);
        const auto c = check_support_rank_bound(inst.rho, inst.sigma, inst.delta);
        ASSERT_TRUE(c.hypothesis_ok) << trial;
        EXPECT_TRUE(c.holds) << trial << ": " << c.lhs << " < " << c.rhs;
    }
}

TEST(TensorDimensionBound, Examples) {
    const auto zero = qmath::DensityMatrix::diagonal(std::vector<double>{1.0, 0.0});
    const auto c0 = check_tensor_dimension_bound(zero, zero, 0.3, 0.4);
    EXPECT_TRUE(c0.holds);
    EXPECT_EQ(c0.rhs, 0);

    const auto half = qmath::DensityMatrix::maximally_mixed(2);
    const auto c = check_tensor_dimension_bound(half, half, 0.5, 0.5);
    EXPECT_TRUE(c.holds);
    EXPECT_EQ(c.lhs, 4u);
    EXPECT_EQ(c.mid, 3u);
    EXPECT_EQ(c.rhs, 0);
    EXPECT_THROW(check_tensor_dimension_bound(half, half, 0.7, 0.5), ValidationError);
}

TEST(TensorDimensionBound, RandomInstancesHold) {
    qmath::Rng rng(77);
    for (int trial = 0; trial < 1000; ++trial) {
        const auto inst = random_tensor_dimension_instance(rng, 8);
        EXPECT_TRUE(check_tensor_dimension_bound(inst.a, inst.b, inst.delta_a, inst.delta_b).holds) << trial;
    }
}

TEST(GrowthFit, QuantileCoefficient) {
    const std::vector<int> grid{256, 1024, 2048, 4096, 8192, 10000};
    const auto fit = growth_fit(kQuarter, 0.95, grid);
    const auto stats = spectrum::spectrum_stats(kQuarter);
    const double expected = spectrum::normal_quantile(0.95) * stats.alpha;
    EXPECT_NEAR(expected, 1.1288776748785982, 1e-12);
    EXPECT_NEAR(fit.fitted_coeff, expected, 0.1 * expected);
    ASSERT_EQ(fit.excess.size(), grid.size());
    ASSERT_EQ(fit.residuals.size(), grid.size());
    for (double e : fit.excess) EXPECT_TRUE(std::isfinite(e));
    EXPECT_TRUE(fit.all_above_bound);
    EXPECT_TRUE(fit.monotonicity_violations.empty());
}

TEST(GrowthFit, MedianCoefficientSmall) {
    const std::vector<int> grid{1024, 2048, 4096, 8192};
    const auto fit = growth_fit(kQuarter, 0.5, grid);
    EXPECT_LT(std::abs(fit.fitted_coeff), 0.1);
}

TEST(GrowthFit, DegenerateAndCsv) {
    const std::vector<int> grid{16, 32};
    EXPECT_THROW(growth_fit(BaseSpectrum::from_probs({0.5, 0.5}), 0.95, grid), DegenerateSpectrumError);
    const auto csv = growth_fit(kQuarter, 0.95, grid).to_csv();
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "n,excess_bits,bound_bits,measured_C");
}

TEST(LeastSquares, ExactLine) {
    const std::vector<double> x{1, 2, 3, 4};
    const std::vector<double> y{3, 5, 7, 9};
    const auto f = least_squares(x, y);
    EXPECT_NEAR(f.slope, 2.0, 1e-14);
    EXPECT_NEAR(f.intercept, 1.0, 1e-14);
}

TEST(DilutionDimension, OracleValues) {
    const auto d256 = min_dilution_dimension(kQuarter, 256, 0.01);
    EXPECT_NEAR(d256.lower_bits(), 228.11287775693601, 1e-9);
    EXPECT_NEAR(d256.upper_bits(), 238.75946610284034, 1e-9);
    const auto d1024 = min_dilution_dimension(kQuarter, 1024, 0.01);
    EXPECT_NEAR(d1024.lower_bits(), 878.29970881742163, 1e-9);
    EXPECT_NEAR(d1024.upper_bits(), 904.96758353169893, 1e-9);
}

TEST(DilutionDimension, SmallCase) {
    const auto d = min_dilution_dimension(kQuarter, 2, 0.5);
    EXPECT_EQ(*d.lower.exact, 2u);
    EXPECT_NEAR(d.lower_bits(), 1.0, 1e-15);
    EXPECT_LE(d.lower, d.upper);
}

TEST(DilutionDimension, LowerVanishesNearTwo) {
    EXPECT_NEAR(min_dilution_dimension(kQuarter, 8, 2.0 - 1e-9).lower_bits(), 0.0, 1e-12);
    EXPECT_THROW(min_dilution_dimension(kQuarter, 8, 2.0), ValidationError);
    EXPECT_THROW(min_dilution_dimension(kQuarter, 8, 0.0), ValidationError);
}

TEST(DilutionDimension, LowerNeverExceedsUpper) {
    for (int n : {1, 3, 16, 64, 300})
        for (double eps : {0.01, 0.1, 0.5, 1.0, 1.9}) {
            const auto d = min_dilution_dimension(kQuarter, n, eps);
            EXPECT_LE(d.lower, d.upper) << n << " " << eps;
        }
}

}  // namespace
