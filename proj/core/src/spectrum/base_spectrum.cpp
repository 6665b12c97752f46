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


#include "entlab/spectrum/base_spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

#include "entlab/common.hpp"

namespace entlab::spectrum {

BaseSpectrum BaseSpectrum::from_probs(std::vector<double> probs) {
    for (double p : probs)
        if (!std::isfinite(p) || p < 0.0) throw ValidationError("base spectrum entries must be finite and nonnegative");
    std::erase(probs, 0.0);
    if (probs.empty()) throw ValidationError("base spectrum has no positive entries");
    const double total = std::accumulate(probs.begin(), probs.end(), 0.0);
    if (std::abs(total - 1.0) > 1e-12) throw ValidationError("base spectrum sums to " + format_double(total));
    std::sort(probs.begin(), probs.end(), std::greater<>());
    return BaseSpectrum(std::move(probs));
}

SpectrumStats spectrum_stats(const BaseSpectrum& p) {
    const auto& q = p.probs();
    SpectrumStats s;
    s.degenerate = std::all_of(q.begin(), q.end(), [&](double x) { return std::abs(x - q.front()) <= 1e-15; });

    long double e = 0.0L;
    for (double x : q) e -= x * std::log2(static_cast<long double>(x));
    s.E = static_cast<double>(e);
    if (s.degenerate) return s;

    long double m2 = 0.0L;
    long double m3 = 0.0L;
    for (double x : q) {
        const long double dev = std::log2(static_cast<long double>(x)) + e;
        m2 += x * dev * dev;
        m3 += x * std::abs(dev * dev * dev);
    }
    s.alpha = static_cast<double>(std::sqrt(m2));
    s.beta = static_cast<double>(m3);
    return s;
}

void require_nondegenerate(const SpectrumStats& stats) {
    if (stats.degenerate || stats.alpha == 0.0)
        throw DegenerateSpectrumError("spectrum is uniform or pure (alpha = 0)");
}

}  // namespace entlab::spectrum
