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

#include "entlab/spectrum/base_spectrum.hpp"
#include "entlab/spectrum/class_spectrum.hpp"

namespace entlab::locc {

/// Outcome of measuring which eigenspace of rho^n the state lies in: a
/// maximally entangled state of dimension 2^ebits, found with probability prob.
struct ConcentrationOutcome {
    double ebits = 0.0;  // log2 multiplicity
    double prob = 0.0;   // class mass
};

struct ConcentrationResult {
    int n = 0;
    double nE = 0.0;
    std::vector<ConcentrationOutcome> outcomes;
    double expected_yield = 0.0;  // sum prob * ebits
    double deficit = 0.0;         // nE - expected_yield
    int message_bits = 0;         // always zero
};

/// No communication is needed: both parties measure the eigenspace locally.
ConcentrationResult concentrate(const spectrum::BaseSpectrum& p, int n, const spectrum::TensorPowerOptions& options = {});

}  // namespace entlab::locc
