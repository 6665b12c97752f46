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
#include <string_view>
#include <vector>

#include "entlab/spectrum/base_spectrum.hpp"

namespace entlab::spectrum {

/// A group of equal eigenvalues of rho^n.
struct SpectralClass {
    double log2_eigenvalue = 0.0;
    double log2_multiplicity = 0.0;
    double log2_mass = 0.0;  // log2_multiplicity + log2_eigenvalue
};

/// Spectrum of rho^(x)n as multiplicity classes, sorted by descending eigenvalue.
struct ClassSpectrum {
    int n = 0;
    std::vector<double> base_probs;
    std::vector<SpectralClass> classes;

    double log2_total_mass() const;
    double log2_total_multiplicity() const;

    /// {"n":..,"base_probs":[..],"classes":[{"log2_eig":..,"log2_mult":..,"log2_mass":..}]}
    std::string to_json() const;
    static ClassSpectrum from_json(std::string_view text);
};

struct TensorPowerOptions {
    /// Upper limit on the number of compositions enumerated.
    double class_cap = 5e7;
};

/// Number of compositions of n into d nonnegative parts, C(n+d-1, d-1), as a double.
double composition_count(int n, std::size_t d);

/// One class per composition (k_1..k_d) of n. Multiplicities come from
/// log-gamma; eigenvalues equal within tol::kMergeBits are merged.
/// Throws CapExceededError past options.class_cap.
ClassSpectrum tensor_power_spectrum(const BaseSpectrum& p, int n, const TensorPowerOptions& options = {});

/// Classes built from an explicit eigenvalue list (zeros dropped), merged and
/// sorted the same way. n is set to 1.
ClassSpectrum class_spectrum_from_eigenvalues(const std::vector<double>& eigenvalues);

/// Total mass of eigenvalues in [2^a, 2^b], both ends inclusive with a
/// tol::kMergeBits slack. Throws ValidationError when a > b.
double mu(const ClassSpectrum& spec, double a, double b);
double log2_mu(const ClassSpectrum& spec, double a, double b);

}  // namespace entlab::spectrum
