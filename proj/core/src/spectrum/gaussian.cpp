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


#include "entlab/spectrum/gaussian.hpp"

#include <cmath>
#include <numbers>

#include <boost/math/distributions/normal.hpp>

#include "entlab/common.hpp"

namespace entlab::spectrum {

double gaussian_cdf(double x1, double x2) {
    if (std::isnan(x1) || std::isnan(x2) || x1 > x2) throw ValidationError("gaussian_cdf needs x1 <= x2");
    const double s = std::numbers::sqrt2;
    // Pick the tail form that subtracts two small numbers, never two near-ones.
    if (x1 >= 0) return 0.5 * (std::erfc(x1 / s) - std::erfc(x2 / s));
    if (x2 <= 0) return 0.5 * (std::erfc(-x2 / s) - std::erfc(-x1 / s));
    return 1.0 - 0.5 * std::erfc(-x1 / s) - 0.5 * std::erfc(x2 / s);
}

double normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) throw ValidationError("normal_quantile needs 0 < p < 1");
    return boost::math::quantile(boost::math::normal_distribution<double>(), p);
}

BerryEsseenResult berry_esseen_residual(const BaseSpectrum& p, const ClassSpectrum& spec, double a, double b) {
    const auto stats = spectrum_stats(p);
    require_nondegenerate(stats);
    if (a > b) throw ValidationError("berry_esseen_residual needs a <= b");
    const double n = spec.n;
    const double scale = std::sqrt(n) * stats.alpha;

    BerryEsseenResult r;
    r.mu = mu(spec, a, b);
    r.gaussian = gaussian_cdf((a + n * stats.E) / scale, (b + n * stats.E) / scale);
    r.residual = std::abs(r.mu - r.gaussian);
    r.bound = 25.0 * stats.beta / std::sqrt(n);
    r.pass = r.residual < r.bound;
    r.normalized_bound = r.bound / (stats.alpha * stats.alpha * stats.alpha);
    r.pass_normalized = r.residual < r.normalized_bound;
    return r;
}

BerryEsseenResult berry_esseen_residual(const BaseSpectrum& p, int n, double a, double b) {
    require_nondegenerate(spectrum_stats(p));
    return berry_esseen_residual(p, tensor_power_spectrum(p, n), a, b);
}

}  // namespace entlab::spectrum
