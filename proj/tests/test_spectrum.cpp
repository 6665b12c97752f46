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
#include "entlab/spectrum/base_spectrum.hpp"
#include "entlab/spectrum/class_spectrum.hpp"
#include "entlab/spectrum/gaussian.hpp"

namespace {

using namespace entlab;
using namespace entlab::spectrum;

const BaseSpectrum kQuarter = BaseSpectrum::from_probs({0.25, 0.75});

TEST(BaseSpectrum, SortsStripsAndValidates) {
    const auto p = BaseSpectrum::from_probs({0.2, 0.0, 0.8});
    ASSERT_EQ(p.size(), 2u);
    EXPECT_EQ(p.probs()[0], 0.8);
    EXPECT_THROW(BaseSpectrum::from_probs({0.5, 0.6}), ValidationError);
    EXPECT_THROW(BaseSpectrum::from_probs({1.5, -0.5}), ValidationError);
    EXPECT_THROW(BaseSpectrum::from_probs({std::nan(""), 1.0}), ValidationError);
}

struct StatsCase {
    double p0, E, alpha, beta;
};

class Stats : public ::testing::TestWithParam<StatsCase> {};

TEST_P(Stats, MatchReference) {
    const auto c = GetParam();
    const auto s = spectrum_stats(BaseSpectrum::from_probs({c.p0, 1.0 - c.p0}));
    EXPECT_NEAR(s.E, c.E, 1e-14);
    EXPECT_NEAR(s.alpha, c.alpha, 1e-14);
    EXPECT_NEAR(s.beta, c.beta, 1e-14);
    EXPECT_FALSE(s.degenerate);
}

INSTANTIATE_TEST_SUITE_P(Binary, Stats,
                         ::testing::Values(StatsCase{0.75, 0.81127812445913286, 0.68630889483511646, 0.46659304825887054},
                                           StatsCase{0.6, 0.97095059445466864, 0.2865719290858539, 0.024980358361385122},
                                           StatsCase{0.9, 0.46899559358928122, 0.95097750043269371, 2.3507331045720505}));

TEST(Stats, DegenerateSpectra) {
    for (const auto& p : {std::vector<double>{1.0}, std::vector<double>{0.25, 0.25, 0.25, 0.25}}) {
        const auto s = spectrum_stats(BaseSpectrum::from_probs(p));
        EXPECT_TRUE(s.degenerate);
        EXPECT_EQ(s.alpha, 0.0);
        EXPECT_THROW(require_nondegenerate(s), DegenerateSpectrumError);
    }
}

TEST(ClassSpectrum, TwoCopiesByHand) {
    const auto spec = tensor_power_spectrum(kQuarter, 2);
    ASSERT_EQ(spec.classes.size(), 3u);
    EXPECT_NEAR(std::exp2(spec.classes[0].log2_eigenvalue), 9.0 / 16.0, 1e-15);
    EXPECT_NEAR(std::exp2(spec.classes[1].log2_multiplicity), 2.0, 1e-14);
    EXPECT_NEAR(std::exp2(spec.classes[1].log2_mass), 6.0 / 16.0, 1e-15);
    EXPECT_NEAR(std::exp2(spec.classes[2].log2_mass), 1.0 / 16.0, 1e-15);
    EXPECT_NEAR(mu(spec, -3.0, -1.0), 0.375, 1e-15);
}

TEST(ClassSpectrum, MassAndMultiplicityTotals) {
    for (int n : {1, 10, 100, 4096}) {
        const auto spec = tensor_power_spectrum(kQuarter, n);
        EXPECT_NEAR(spec.log2_total_mass(), 0.0, 1e-12) << n;
        EXPECT_NEAR(spec.log2_total_multiplicity(), n, 1e-9) << n;
        for (std::size_t i = 1; i < spec.classes.size(); ++i)
            EXPECT_LT(spec.classes[i].log2_eigenvalue, spec.classes[i - 1].log2_eigenvalue);
    }
}

TEST(ClassSpectrum, UniformMergesIntoOneClass) {
    const auto spec = tensor_power_spectrum(BaseSpectrum::from_probs({0.25, 0.25, 0.25, 0.25}), 6);
    ASSERT_EQ(spec.classes.size(), 1u);
    EXPECT_NEAR(spec.classes[0].log2_multiplicity, 12.0, 1e-12);
}

TEST(ClassSpectrum, ThreeLevelAgainstExplicitEigenvalues) {
    const std::vector<double> p{0.5, 0.3, 0.2};
    std::vector<double> ev{1.0};
    for (int i = 0; i < 5; ++i) {
        std::vector<double> next;
        for (double x : ev)
            for (double y : p) next.push_back(x * y);
        ev = next;
    }
    const auto a = tensor_power_spectrum(BaseSpectrum::from_probs(p), 5);
    const auto b = class_spectrum_from_eigenvalues(ev);
    ASSERT_EQ(a.classes.size(), b.classes.size());
    for (std::size_t i = 0; i < a.classes.size(); ++i) {
        EXPECT_NEAR(a.classes[i].log2_mass, b.classes[i].log2_mass, 1e-12);
        EXPECT_NEAR(a.classes[i].log2_multiplicity, b.classes[i].log2_multiplicity, 1e-12);
    }
}

TEST(ClassSpectrum, CapAndCount) {
    EXPECT_DOUBLE_EQ(composition_count(4, 3), 15.0);
    TensorPowerOptions opt;
    opt.class_cap = 10;
    EXPECT_THROW(tensor_power_spectrum(BaseSpectrum::from_probs({0.5, 0.3, 0.2}), 4, opt), CapExceededError);
}

TEST(ClassSpectrum, JsonRoundTrip) {
    const auto spec = tensor_power_spectrum(kQuarter, 7);
    const auto back = ClassSpectrum::from_json(spec.to_json());
    EXPECT_EQ(back.n, 7);
    ASSERT_EQ(back.classes.size(), spec.classes.size());
    for (std::size_t i = 0; i < spec.classes.size(); ++i) EXPECT_EQ(back.classes[i].log2_mass, spec.classes[i].log2_mass);
    EXPECT_THROW(ClassSpectrum::from_json("{\"n\": 1}"), ValidationError);
}

TEST(Mu, IntervalConventions) {
    const auto spec = tensor_power_spectrum(kQuarter, 2);
    EXPECT_NEAR(mu(spec, -100, 0), 1.0, 1e-15);
    EXPECT_NEAR(mu(spec, std::log2(9.0 / 16.0), std::log2(9.0 / 16.0)), 9.0 / 16.0, 1e-15);
    EXPECT_EQ(mu(spec, -0.5, 0.0), 0.0);
    EXPECT_THROW(mu(spec, 1.0, 0.0), ValidationError);
    EXPECT_THROW(mu(spec, std::nan(""), 0.0), ValidationError);
}

TEST(Gaussian, CdfAndQuantile) {
    EXPECT_NEAR(gaussian_cdf(-kInf, kInf), 1.0, 1e-15);
    EXPECT_NEAR(gaussian_cdf(-1.1, kInf), 0.86433393905361734, 1e-14);
    EXPECT_NEAR(gaussian_cdf(20.0, 21.0), 2.7536241153269557e-89, 1e-101);
    EXPECT_NEAR(normal_quantile(0.95), 1.6448536269514727, 1e-14);
    EXPECT_NEAR(normal_quantile(0.95) * 0.68630889483511646, 1.1288776748785982, 1e-13);
}

struct BeCase {
    int n;
    double a, b, mu, gaussian;
};

TEST(BerryEsseen, ExactBinomialReference) {
    for (const auto& c : {BeCase{100, -90, -75, 0.68477772287053826, 0.7159847337086441},
                          BeCase{400, -330, -320, 0.27004366565170955, 0.28416933665327062}}) {
        const auto r = berry_esseen_residual(kQuarter, c.n, c.a, c.b);
        EXPECT_NEAR(r.mu, c.mu, 1e-12);
        EXPECT_NEAR(r.gaussian, c.gaussian, 1e-12);
        EXPECT_NEAR(r.bound, 25 * 0.46659304825887054 / std::sqrt(c.n), 1e-12);
        EXPECT_TRUE(r.pass);
    }
    EXPECT_THROW(berry_esseen_residual(BaseSpectrum::from_probs({0.5, 0.5}), 10, -5, -4), DegenerateSpectrumError);
}

TEST(BerryEsseen, ResidualBoundedByBoundForQuarter) {
    qmath::Rng rng(21);
    std::uniform_real_distribution<double> z(-4, 4);
    for (int n : {100, 1600}) {
        const auto spec = tensor_power_spectrum(kQuarter, n);
        const double nE = n * 0.81127812445913286, s = std::sqrt(n) * 0.68630889483511646;
        for (int i = 0; i < 200; ++i) {
            double a = -nE + z(rng) * s, b = -nE + z(rng) * s;
            if (a > b) std::swap(a, b);
            EXPECT_TRUE(berry_esseen_residual(kQuarter, spec, a, b).pass);
        }
    }
}

}  // namespace
