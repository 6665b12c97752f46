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

#include <cstdint>
#include <optional>

#include "entlab/common.hpp"
#include "entlab/locc/aligned_profile.hpp"
#include "entlab/locc/standard_form.hpp"
#include "entlab/qmath/states.hpp"
#include "entlab/spectrum/class_spectrum.hpp"

namespace entlab::locc {

/// Exact dilution of |Phi_d> into sum_i sqrt(q_i)|ii>: outcome k applies
/// weights q_{(j+k) mod d} and the cyclic shift j -> (j+k) mod d.
/// c = ceil(log2 d). Throws ValidationError on an empty profile.
DiagonalKraus build_shift_dilution(const qmath::SchmidtProfile& q);

/// Budgeted dilution on K = 2^c equal blocks of size m.
///
/// The target spectrum is truncated to its top K*m Schmidt probabilities
/// (zero-padded when the rank is smaller), each block is flattened to its
/// average probability, and the result is renormalized. The protocol is the
/// block-level cyclic shift. Positions are tracked symbolically, so the
/// dimension K*m may be astronomically large.
struct BlockShiftProtocol {
    int c = 0;                        // message bits, log2 K
    int requested_c = 0;              // before clamping to ceil(log2 rank)
    double log2_m = 0.0;              // block size
    std::optional<std::uint64_t> m;   // exact block size when it fits
    double log2_dprime = 0.0;         // log2(K m), the input dimension
    ExtendedCount n_delta;            // S(target, delta) used to size the blocks
    double delta = 0.0;
    double epsilon_target = 0.0;
    double log2_kept_mass = 0.0;      // mass of the truncated target
    AlignedProfile profile;           // target vs. flattened output
    double target_error = 0.0;        // D(psi~, psi)
    double fidelity = 0.0;            // <psi~|psi>
    spectrum::ClassSpectrum target;

    /// Outcome probability 1/K for every outcome.
    double outcome_prob() const;

    /// Explicit Kraus family. Throws CapExceededError unless the block size is
    /// exact and K*m <= dim_cap.
    DiagonalKraus materialize(std::uint64_t dim_cap = std::uint64_t{1} << 16) const;
};

/// Blocks are sized to cover the delta = 1 - epsilon_target^2/8 mass of the
/// target, so truncation alone costs at most epsilon_target / sqrt(2) in trace
/// distance. Budgets above ceil(log2 rank) are clamped.
BlockShiftProtocol build_block_dilution(const spectrum::ClassSpectrum& target, int budget_c,
                                        double epsilon_target = 0.1);

/// Truncation level used by build_block_dilution.
double block_delta(double epsilon_target);

}  // namespace entlab::locc
