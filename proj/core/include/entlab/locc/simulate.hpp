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

#include <string>
#include <utility>
#include <vector>

#include "entlab/locc/protocol_ir.hpp"
#include "entlab/locc/standard_form.hpp"

namespace entlab::locc {

/// One complete run of the program for a fixed sequence of measurement outcomes.
struct Branch {
    std::vector<std::pair<std::string, int>> outcomes;  // every measurement, in program order
    Transcript sent;                                    // sent labels, in send order
    double prob = 0.0;
    qmath::Vector state;  // normalized, over all registers in id order
};

/// Mixture over branches sharing a sent transcript, on the kept registers.
struct TranscriptOutput {
    Transcript sent;
    double prob = 0.0;
    qmath::Matrix density;
};

struct DenseEnsemble {
    std::vector<qmath::Index> dims;  // every register, in id order
    std::vector<int> kept;           // Alice's kept registers, then Bob's
    qmath::Index kept_dim_a = 1;
    qmath::Index kept_dim_b = 1;
    std::vector<Branch> branches;

    double total_prob() const;
    /// Sorted by transcript.
    std::vector<TranscriptOutput> by_transcript() const;
};

inline constexpr qmath::Index kDenseDimCap = qmath::Index{1} << 14;

/// Exhaustive simulation over all measurement outcomes. Branches with
/// probability below 1e-24 are dropped. Throws CapExceededError when the
/// product of all register dimensions exceeds `dim_cap`.
DenseEnsemble simulate_dense(const ProtocolIR& ir, const qmath::PureBipartiteState& input,
                             qmath::Index dim_cap = kDenseDimCap);

/// Per-outcome output of a standard-form protocol, traced down to A and B.
std::vector<TranscriptOutput> standard_form_outputs(const StandardFormProtocol& proto,
                                                    const qmath::PureBipartiteState& input);

struct EnsembleComparison {
    double total_variation = 0.0;    // (1/2) sum |p - p'|
    double max_trace_distance = 0.0; // over transcripts with positive weight on both sides
    bool transcripts_match = true;   // every positive-probability transcript appears on both sides
};

/// Compares ensembles keyed by transcript. Transcripts whose probability is
/// below `negligible` on both sides are ignored.
EnsembleComparison compare_ensembles(const std::vector<TranscriptOutput>& a, const std::vector<TranscriptOutput>& b,
                                     double negligible = 1e-12);

}  // namespace entlab::locc
