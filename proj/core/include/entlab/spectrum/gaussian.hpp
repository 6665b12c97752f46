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

#include "entlab/spectrum/base_spectrum.hpp"
#include "entlab/spectrum/class_spectrum.hpp"

namespace entlab::spectrum {

/// Standard normal mass on [x1, x2]; infinities allowed.
double gaussian_cdf(double x1, double x2);

/// Inverse of the standard normal distribution function.
double normal_quantile(double p);

struct BerryEsseenResult {
    double mu = 0.0;        // exact mass of eigenvalues in [2^a, 2^b]
    double gaussian = 0.0;  // N((a+nE)/(sqrt(n) alpha), (b+nE)/(sqrt(n) alpha))
    double residual = 0.0;  // |mu - gaussian|
    double bound = 0.0;     // 25 beta / sqrt(n)
    bool pass = false;      // residual < bound
    /// 25 beta / (alpha^3 sqrt(n)): the bound with the surprisal standardized.
    double normalized_bound = 0.0;
    bool pass_normalized = false;
};

/// Compares the exact class mass with the Gaussian approximation.
/// Throws DegenerateSpectrumError when alpha == 0.
BerryEsseenResult berry_esseen_residual(const BaseSpectrum& p, const ClassSpectrum& spec, double a, double b);
BerryEsseenResult berry_esseen_residual(const BaseSpectrum& p, int n, double a, double b);

}  // namespace entlab::spectrum
