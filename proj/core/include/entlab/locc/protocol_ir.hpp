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
#include <string_view>
#include <vector>

#include "entlab/qmath/random.hpp"
#include "entlab/qmath/states.hpp"

namespace entlab::locc {

enum class Party { Alice, Bob };

const char* party_name(Party p);
Party other(Party p);

struct RegisterInfo {
    Party party;
    qmath::Index dim;
};

enum class OpKind { AddAncilla, Unitary, Measure, Send, Discard };

struct Instruction {
    OpKind kind;
    Party party;
    /// AddAncilla: the new register. Unitary: targets, first is most
    /// significant. Measure, Discard: the single register.
    std::vector<int> registers;
    /// AddAncilla: initial pure state.
    qmath::Vector state;
    /// Unitary: one matrix, or one per value of the control label.
    /// Measure: a unitary whose columns are the basis vectors.
    std::vector<qmath::Matrix> matrices;
    /// Measure: the record written. Send: the record sent. Unitary: the
    /// control record, empty when uncontrolled.
    std::string label;
};

/// Two-party program over typed registers. Register 0 is Alice's input and
/// register 1 is Bob's; ADD_ANCILLA appends registers in order.
class ProtocolIR {
   public:
    ProtocolIR(qmath::Index input_dim_a, qmath::Index input_dim_b);

    int add_ancilla(Party party, qmath::Vector state);
    void unitary(Party party, std::vector<int> registers, qmath::Matrix u);
    void controlled_unitary(Party party, std::vector<int> registers, std::string label, std::vector<qmath::Matrix> us);
    void measure(Party party, int reg, qmath::Matrix basis, std::string label);
    void send(Party from, std::string label);
    void discard(Party party, int reg);

    const std::vector<RegisterInfo>& registers() const { return registers_; }
    const std::vector<Instruction>& instructions() const { return instructions_; }

    /// Throws ValidationError on: unknown or foreign registers, use after
    /// discard, unitaries or repeated measurement on measured registers,
    /// non-unitary matrices, controls on labels the party does not hold,
    /// sends of labels the sender did not record or already sent.
    void validate() const;

    /// Sum over SENDs of ceil(log2 D), D the dimension of the measured register.
    int message_bits() const;
    /// Number of values a label can take.
    qmath::Index label_dim(const std::string& label) const;
    /// Labels in SEND order.
    std::vector<std::string> sent_labels() const;
    /// Registers of `party` never discarded, in creation order.
    std::vector<int> kept_registers(Party party) const;

    std::string to_json() const;
    static ProtocolIR from_json(std::string_view text);

   private:
    std::vector<RegisterInfo> registers_;
    std::vector<Instruction> instructions_;
};

struct ToyInstance {
    ProtocolIR ir;
    qmath::PureBipartiteState input;
};

struct ToyOptions {
    int max_local_dim = 4;
    int max_rounds = 3;
    /// Cap on each party's space including measurement records.
    qmath::Index max_party_dim = 64;
};

/// Random adaptive protocol: each round one party may add an ancilla, applies
/// local (possibly label-controlled) unitaries, measures a register and usually
/// sends the outcome.
ToyInstance random_toy_ir(qmath::Rng& rng, const ToyOptions& options = {});

}  // namespace entlab::locc
