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

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "entlab/common.hpp"
#include "entlab/locc/aligned_profile.hpp"
#include "entlab/locc/dilution.hpp"
#include "entlab/locc/standard_form.hpp"
#include "entlab/qmath/ops.hpp"
#include "entlab/qmath/states.hpp"

namespace entlab::locc {

struct RunOptions {
    /// Outcomes with error at most this are counted as successes.
    double good_threshold = 0.01;
    /// Number of copies of the target, for reporting.
    int n = 1;
};

/// Full state data for an outcome of a dense run.
struct DenseOutcome {
    Index dim_a = 1, dim_a_anc = 1, dim_b = 1, dim_b_anc = 1;
    Vector x;      // normalized output on (A A')(B B')
    Matrix y;      // on A B
    Matrix x_a;    // on A A', equal to M M^dag / Tr M M^dag
    Matrix gamma;  // on A', reduced from the product extension
    qmath::ProductExtension extension;
    bool extension_ok = false;
};

struct OutcomeState {
    std::size_t k = 0;
    double log2_count = 0.0;  // number of identical outcomes this entry stands for
    double prob = 0.0;        // probability of each of them
    double epsilon = 0.0;     // trace distance of the A B output from the target
    bool good = false;
    double x_norm = 0.0;        // ||X||
    double log2_x_norm = kNegInf;
    double log2_x_rank = 0.0;   // log2 epsilon_rank(X, 1e-9)
    std::optional<DenseOutcome> dense;
    /// Schmidt-diagonal runs: target vs normalized output, position by position.
    std::optional<AlignedProfile> aligned;
};

struct ProtocolRunReport {
    int n = 1;
    double log2_d = 0.0;
    int c = 0;
    double s = 0.0;  // -log2 success_prob; +inf when nothing succeeds
    double epsilon = 0.0;
    double success_prob = 0.0;
    double threshold = 0.0;
    std::vector<OutcomeState> outcomes;

    // Filled by lift_success_probability.
    double repetitions = 1.0;
    double failure_prob = 0.0;
    double ebits_consumed = 0.0;  // log2 d times repetitions

    double total_prob() const;
    /// Good outcome with the largest per-outcome probability; nullptr if none.
    const OutcomeState* best_good_outcome() const;
    /// {"n","d","log2_d","c","s","epsilon","success_prob","per_outcome":[...]}
    std::string to_json() const;
};

/// Dense run on |Phi_d> with d = proto.dim_a_in. The target
/// sum_i sqrt(q_i)|ii> must fit in the output registers A and B.
ProtocolRunReport run_protocol(const StandardFormProtocol& proto, const qmath::SchmidtProfile& target,
                               const RunOptions& options = {});

/// Schmidt-diagonal run: the state is tracked as a weight vector.
ProtocolRunReport run_protocol(const DiagonalKraus& proto, const qmath::SchmidtProfile& target,
                               const RunOptions& options = {});

/// Symbolic run: all K outcomes are equivalent, so one entry stands for them.
ProtocolRunReport run_protocol(const BlockShiftProtocol& proto, const RunOptions& options = {});

/// Repeats Alice's measurement R = max(1, ceil(2^s ln(1/eps_fail))) times
/// and announces the first success, which costs ceil(log2 R) extra bits.
/// Throws ValidationError unless eps_fail is in (0,1) and s is finite.
ProtocolRunReport lift_success_probability(const ProtocolRunReport& report, double eps_fail);

}  // namespace entlab::locc
