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


#pragma once

#include <vector>

namespace entlab::spectrum {

/// Eigenvalues of a single-copy reduced density matrix. Zero entries are
/// stripped and the rest sorted nonincreasing on construction.
class BaseSpectrum {
   public:
    /// Rejects negative or non-finite entries and sums off one by more than 1e-12.
    static BaseSpectrum from_probs(std::vector<double> probs);

    const std::vector<double>& probs() const { return probs_; }
    std::size_t size() const { return probs_.size(); }

   private:
    explicit BaseSpectrum(std::vector<double> p) : probs_(std::move(p)) {}
    std::vector<double> probs_;
};

/// Moments of the surprisal -log2 p under p, all in bits.
struct SpectrumStats {
    double E = 0.0;      // entropy
    double alpha = 0.0;  // standard deviation
    double beta = 0.0;   // third absolute central moment
    /// All probabilities equal (uniform or pure): alpha is exactly zero.
    bool degenerate = false;
};

SpectrumStats spectrum_stats(const BaseSpectrum& p);

/// Throws DegenerateSpectrumError when alpha == 0.
void require_nondegenerate(const SpectrumStats& stats);

}  // namespace entlab::spectrum
