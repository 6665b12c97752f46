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
#include <string>
#include <utility>
#include <vector>

#include "entlab/qmath/states.hpp"

namespace entlab::locc {

using qmath::Index;
using qmath::Matrix;
using qmath::Vector;

/// Alice's value for one sent label.
using TranscriptEntry = std::pair<std::string, int>;
using Transcript = std::vector<TranscriptEntry>;

/// One generalized measurement by Alice, a c-bit message, an isometric
/// correction by Bob, then the ancilla factors A' and B' are discarded.
///
/// Alice's operator M_k maps H_Ain to H_A (x) H_A' (A is the major index);
/// Bob's U_k maps H_Bin to H_B (x) H_B'.
struct StandardFormProtocol {
    Index dim_a_in = 1;
    Index dim_b_in = 1;
    Index dim_a_out = 1;
    Index dim_a_anc = 1;
    Index dim_b_out = 1;
    Index dim_b_anc = 1;
    int message_bits = 0;
    std::vector<Matrix> alice_ops;
    std::vector<Matrix> bob_ops;
    /// Optional: the sent labels behind each outcome.
    std::vector<Transcript> transcripts;

    std::size_t outcome_count() const { return alice_ops.size(); }

    /// Operator norm of sum_k M_k^dag M_k - I.
    double completeness_error() const;
    /// Largest operator norm of U_k^dag U_k - I.
    double isometry_error() const;

    /// Checks shapes, outcome count <= 2^c, completeness and isometries
    /// within tol::kValidity. Throws ValidationError.
    void validate() const;
};

/// Unnormalized (M_k (x) U_k)|psi> on (A A')(B B') for every outcome.
std::vector<Vector> apply_standard_form(const StandardFormProtocol& proto, const qmath::PureBipartiteState& input);

/// Schmidt-diagonal protocol on |Phi_d>: M_k = P_k diag(sqrt w_k) and U_k = P_k,
/// with P_k the permutation j -> perm[k][j]. Outcome k leaves
/// sum_j sqrt(w_k(j)/d) |perm_k(j)>|perm_k(j)>.
struct DiagonalKraus {
    Index dim = 1;
    int message_bits = 0;
    std::vector<std::vector<double>> weights;
    std::vector<std::vector<Index>> perms;

    std::size_t outcome_count() const { return weights.size(); }

    /// max_j |sum_k w_k(j) - 1|.
    double completeness_error() const;
    /// Checks shapes, nonnegative weights, permutations, per-position
    /// completeness within 1e-12 and outcome count <= 2^c.
    void validate() const;

    /// Dense form with trivial A' and B'.
    StandardFormProtocol to_dense() const;
};

/// ceil(log2 k) for k >= 1.
int ceil_log2(std::uint64_t k);

}  // namespace entlab::locc
