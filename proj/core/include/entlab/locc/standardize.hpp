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

#include "entlab/locc/protocol_ir.hpp"
#include "entlab/locc/standard_form.hpp"

namespace entlab::locc {

struct StandardizeResult {
    StandardFormProtocol protocol;
    /// Largest ||(G (x) Y) Phi - (1 (x) Pi) Phi|| over moves of Bob's sent
    /// measurements to Alice; zero when Bob sends nothing.
    double migration_residual = 0.0;
};

/// Rewrites a program into one generalized measurement by Alice, one message
/// of the same total bit count, and an isometric correction by Bob.
///
/// Measurements become coherent copies into record registers. Alice's sends
/// split the branch by projecting her record. Bob's sends are moved to Alice
/// through the Schmidt symmetry of the current joint state, which is why the
/// rewrite is specific to `input`. Discarded registers and records form A'
/// and B'; outcome k carries its sent transcript.
StandardizeResult standardize(const ProtocolIR& ir, const qmath::PureBipartiteState& input);

}  // namespace entlab::locc
