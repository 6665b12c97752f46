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
#include <vector>

#include "entlab/locc/run.hpp"
#include "entlab/spectrum/base_spectrum.hpp"

namespace entlab::locc {

struct CertificateParams {
    double delta_rho = 0.95;
    double delta_gamma = 0.04;
    double eps0 = 0.01;
};

/// One step of the chain, always in the form lhs <= rhs.
struct ChainInequality {
    enum class Kind {
        Identity,    // holds for every outcome; a failure means a bug or bad input
        Hypothesis,  // may fail outside the regime of the bound
        Conclusion,  // follows from the identities and hypotheses
    };
    std::string name;
    Kind kind = Kind::Identity;
    double lhs = 0.0;
    double rhs = 0.0;
    bool holds = false;
};

/// Every intermediate quantity of the communication lower bound evaluated on
/// one outcome: P1 projects onto eigenvalues of rho^n at least 2^{-nE}, P2
/// onto the top S(Gamma, delta_gamma) eigenvectors of Gamma.
struct CommunicationCertificate {
    int n = 0;
    double E = 0.0, alpha = 0.0, beta = 0.0;
    double c = 0.0, s = 0.0, epsilon = 0.0, log2_d = 0.0;
    CertificateParams params;

    bool large_n = false;        // n > 2500 beta^2
    bool small_epsilon = false;  // epsilon <= eps0

    double log2_tr_p1 = 0.0;
    double p1_mass = 0.0;        // Tr P1 rho^n
    double tr_p2 = 0.0;
    double p2_mass = 0.0;        // Tr P2 Gamma
    double log2_x_norm = 0.0;
    double trace_px = 0.0;       // Tr (P1 (x) P2) X
    double overlap = 0.0;        // Tr (P1 (x) P2)(rho^n (x) Gamma)
    double distance_x = 0.0;     // D(X, rho^n (x) Gamma)
    double extension_distance = 0.0;  // D(x, psi^n (x) gamma)
    /// C in d = C Tr P2 2^{nE + alpha sqrt n}.
    double log2_C = 0.0;
    /// delta_gamma/4 - 2^{c+s-alpha sqrt n}/C.
    double chain_lower = 0.0;
    /// alpha sqrt n + log2(delta_gamma/4 - epsilon) + log2 C; -inf when vacuous.
    double cs_lower = 0.0;
    /// Same with eps0 in place of epsilon.
    double cs_lower_eps0 = 0.0;

    std::vector<ChainInequality> inequalities;

    bool all_hold(ChainInequality::Kind kind) const;
    /// Identities hold, and the conclusions hold whenever every hypothesis does.
    bool internally_consistent() const;
    std::string to_json() const;
};

/// Throws ValidationError when the outcome is not good or carries no state
/// data, and DegenerateSpectrumError when alpha == 0.
CommunicationCertificate verify_communication_bound(const OutcomeState& outcome, const spectrum::BaseSpectrum& p, int n,
                                        const ProtocolRunReport& report, const CertificateParams& params = {});

}  // namespace entlab::locc
