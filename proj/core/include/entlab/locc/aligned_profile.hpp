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

#include <span>
#include <vector>

#include "entlab/spectrum/class_spectrum.hpp"

namespace entlab::locc {

/// A run of `count` Schmidt positions sharing a target probability and an
/// output probability. All fields are log2; -inf encodes zero.
struct AlignedSegment {
    double log2_count = 0.0;
    double log2_target = 0.0;
    double log2_output = 0.0;
};

/// Output and target Schmidt probabilities compared position by position in
/// a common Schmidt basis, with the target sorted nonincreasing. Segments
/// cover every position where either side is nonzero, so both columns sum to 1.
class AlignedProfile {
   public:
    AlignedProfile() = default;
    explicit AlignedProfile(std::vector<AlignedSegment> segments) : segments_(std::move(segments)) {}

    /// Position-wise pairing; the shorter vector is padded with zeros and
    /// adjacent equal pairs are merged.
    static AlignedProfile from_vectors(std::span<const double> target, std::span<const double> output);

    const std::vector<AlignedSegment>& segments() const { return segments_; }

    /// log2 of sum count (sqrt t - sqrt o)^2; exact shifts give -inf.
    double log2_hellinger_sq() const;
    /// sum count sqrt(t o).
    double fidelity() const;
    /// Trace distance 2 sqrt(1 - F^2) between the two Schmidt-diagonal pure
    /// states, evaluated through the Hellinger sum for accuracy near zero.
    double pure_distance() const;
    /// sum count |t - o|: trace distance of the two reduced states.
    double classical_distance() const;

    double max_output() const;
    double log2_max_output() const;
    /// log2 number of positions with output > rel_tol * max_output.
    double log2_output_rank(double rel_tol) const;
    /// Positions whose target probability is at least 2^log2_threshold.
    double log2_target_count_at_least(double log2_threshold) const;
    double target_mass_at_least(double log2_threshold) const;
    double output_mass_where_target_at_least(double log2_threshold) const;
    double log2_total_output() const;

    /// The target column as a class spectrum (n = 1).
    spectrum::ClassSpectrum target_spectrum() const;

   private:
    std::vector<AlignedSegment> segments_;
};

}  // namespace entlab::locc
