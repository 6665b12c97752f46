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
#include <span>
#include <string>
#include <vector>

#include "entlab/common.hpp"
#include "entlab/qmath/random.hpp"
#include "entlab/qmath/states.hpp"
#include "entlab/spectrum/base_spectrum.hpp"
#include "entlab/spectrum/class_spectrum.hpp"

namespace entlab::sigsub {

/// Smallest dimension of a projector capturing at least `delta` of the mass.
struct SigQueryResult {
    double delta = 0.0;
    ExtendedCount dimension = ExtendedCount::zero();
    double achieved_mass = 0.0;
};

/// Walks classes in descending eigenvalue order until the cumulative mass
/// reaches delta - tol::kMass. A partially used class contributes
/// ceil(remaining / eigenvalue) dimensions. delta == 0 gives dimension 0.
SigQueryResult sig_dim(const spectrum::ClassSpectrum& spec, double delta);
SigQueryResult sig_dim(const qmath::DensityMatrix& rho, double delta);
/// Eigenvalues in any order; negative entries are clamped to zero.
SigQueryResult sig_dim(std::span<const double> eigenvalues, double delta);

/// Rank tolerance (relative to the largest eigenvalue) for the support of sigma.
inline constexpr double kSupportRankTol = 1e-9;

struct SupportRankCheck {
    bool holds = false;  // lhs >= rhs
    int lhs = 0;         // epsilon rank of sigma
    std::uint64_t rhs = 0;  // S(rho, delta)
    double distance = 0.0;
    bool hypothesis_ok = false;  // D(rho, sigma) <= 2(1 - delta) (+ tol::kEquality)
};

/// Support rank of any state within 2(1 - delta) of rho is at least S(rho, delta).
SupportRankCheck check_support_rank_bound(const qmath::DensityMatrix& rho, const qmath::DensityMatrix& sigma, double delta);

struct SupportRankInstance {
    qmath::DensityMatrix rho;
    qmath::DensityMatrix sigma;
    double delta;
};

/// rho of dim <= max_dim; sigma is either rho truncated to its top eigenvectors
/// and renormalized (the tight case) or an independent low-rank state. delta is
/// set to 1 - D/2 so the hypothesis holds.
SupportRankInstance random_support_rank_instance(qmath::Rng& rng, int max_dim);

struct TensorDimensionInstance {
    qmath::DensityMatrix a;
    qmath::DensityMatrix b;
    double delta_a;
    double delta_b;
};

/// Random states of dims <= max_dim with delta_a + delta_b <= 1.
TensorDimensionInstance random_tensor_dimension_instance(qmath::Rng& rng, int max_dim);

struct TensorDimensionCheck {
    bool holds = false;  // lhs >= mid && mid > rhs
    std::uint64_t lhs = 0;   // S(A (x) B, dA + dB)
    std::uint64_t mid = 0;   // S(A (x) B, dA + dB - dA dB)
    std::int64_t rhs = 0;    // (S(A, dA) - 1)(S(B, dB) - 1)
};

/// Throws ValidationError unless delta_a, delta_b >= 0 and delta_a + delta_b <= 1.
TensorDimensionCheck check_tensor_dimension_bound(const qmath::DensityMatrix& a, const qmath::DensityMatrix& b, double delta_a, double delta_b);

/// Large-n constants of the growth bound: S(rho^n, delta) >= C 2^{nE + alpha sqrt(n)} for n > n0.
struct ReferenceConstants {
    double delta = 0.95;
    double C = 0.01;
    double n0_per_beta_sq = 1e7;
};
inline constexpr ReferenceConstants kReferenceConstants{};

struct GrowthFit {
    double delta = 0.0;
    std::vector<int> n_grid;
    std::vector<double> excess;      // log2 S(rho^n, delta) - nE
    std::vector<double> bound_bits;  // log2(C) + alpha sqrt(n)
    std::vector<double> measured_C;  // S / 2^{nE + alpha sqrt(n)}
    std::vector<double> residuals;   // excess - fit
    double fitted_coeff = 0.0;       // bits per sqrt(n)
    double fitted_const = 0.0;
    bool all_above_bound = false;
    /// Grid indices i where excess[i] < excess[i-1].
    std::vector<std::size_t> monotonicity_violations;

    /// Columns n,excess_bits,bound_bits,measured_C.
    std::string to_csv() const;
};

/// Least-squares fit of excess(n) on (sqrt(n), 1). Needs at least two
/// ascending grid points; throws DegenerateSpectrumError when alpha == 0.
GrowthFit growth_fit(const spectrum::BaseSpectrum& p, double delta, std::span<const int> n_grid,
                     const ReferenceConstants& constants = kReferenceConstants);

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
};
LineFit least_squares(std::span<const double> x, std::span<const double> y);

struct DilutionDimension {
    ExtendedCount lower;  // S(rho^n, 1 - eps/2)
    ExtendedCount upper;  // smallest k with D(truncated top-k state, psi^n) <= eps
    double lower_bits() const { return lower.log2; }
    double upper_bits() const { return upper.log2; }
};

/// Bounds on the Schmidt rank any epsilon-accurate dilution output needs.
/// The truncated state has fidelity sqrt(M_k) with M_k the top-k mass, so the
/// upper bound is S(rho^n, 1 - eps^2/4). Requires 0 < eps < 2.
DilutionDimension min_dilution_dimension(const spectrum::ClassSpectrum& spec, double epsilon);
DilutionDimension min_dilution_dimension(const spectrum::BaseSpectrum& p, int n, double epsilon);

}  // namespace entlab::sigsub
