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


#include "entlab/locc/concentration.hpp"

#include <cmath>

#include "entlab/common.hpp"

namespace entlab::locc {

ConcentrationResult concentrate(const spectrum::BaseSpectrum& p, int n, const spectrum::TensorPowerOptions& options) {
    if (n < 1) throw ValidationError("n must be positive");
    const auto spec = spectrum::tensor_power_spectrum(p, n, options);
    ConcentrationResult r;
    r.n = n;
    r.nE = n * spectrum::spectrum_stats(p).E;
    long double yield = 0.0L;
    for (const auto& c : spec.classes) {
        const double prob = std::exp2(c.log2_mass);
        r.outcomes.push_back({c.log2_multiplicity, prob});
        yield += static_cast<long double>(prob) * c.log2_multiplicity;
    }
    r.expected_yield = static_cast<double>(yield);
    r.deficit = r.nE - r.expected_yield;
    return r;
}

}  // namespace entlab::locc
