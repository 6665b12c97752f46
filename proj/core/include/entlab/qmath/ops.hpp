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

#include <span>
#include <vector>

#include "entlab/qmath/states.hpp"

namespace entlab::qmath {

enum class Subsystem { A, B };

/// Tr|rho - sigma|, in [0, 2].
double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma);

/// Sum of absolute eigenvalues of a Hermitian matrix (symmetrized first).
double trace_norm_hermitian(const Matrix& h);

/// Trace distance between two unit vectors: 2 sqrt(1 - |<a|b>|^2).
double pure_trace_distance(const Vector& a, const Vector& b);

struct TraceDistanceWitness {
    double value = 0.0;
    /// Projector onto the span of the positive eigenvectors of rho - sigma.
    Matrix projector;
};

/// The maximizing projector P of 2 Tr P(rho - sigma) and the attained value.
TraceDistanceWitness trace_distance_witness(const DensityMatrix& rho, const DensityMatrix& sigma);

/// Largest singular value.
double operator_norm(const Matrix& a);

struct SchmidtDecomposition {
    SchmidtProfile profile;
    /// Column i pairs with column i of basis_b and coefficient sqrt(profile[i]).
    Matrix basis_a;
    Matrix basis_b;
    Index dim_a = 0;
    Index dim_b = 0;

    Vector reconstruct() const;
};

/// SVD of the coefficient matrix. Schmidt terms with squared coefficient
/// below 1e-20 are dropped from the profile.
SchmidtDecomposition schmidt_decompose(const PureBipartiteState& psi);

/// Traces out `traced` from a state on H_A (x) H_B.
DensityMatrix partial_trace(const DensityMatrix& rho, Subsystem traced, Index dim_a, Index dim_b);
DensityMatrix partial_trace(const PureBipartiteState& psi, Subsystem traced);

/// Reduced operator of |v><v| on the registers marked `keep`, in register order.
/// `v` need not be normalized.
Matrix reduce_pure(const Vector& v, std::span<const Index> dims, std::span<const bool> keep);

/// Reorders the tensor factors of `v`: output factor i is input factor perm[i].
Vector permute_subsystems(const Vector& v, std::span<const Index> dims, std::span<const std::size_t> perm);

/// Tr sqrt(sqrt(rho0) rho1 sqrt(rho0)), eigenvalues clamped at zero.
double fidelity(const DensityMatrix& rho0, const DensityMatrix& rho1);

/// Number of eigenvalues greater than tol * (largest eigenvalue).
int epsilon_rank(const Matrix& hermitian, double tol);
int epsilon_rank(const DensityMatrix& rho, double tol);

/// Rank with the LAPACK-style default threshold dim * eps_machine * max|lambda|.
int machine_rank(const Matrix& hermitian);

/// Eigenvalues of a Hermitian matrix in nonincreasing order.
std::vector<double> hermitian_eigenvalues(const Matrix& h);

/// Result of the optimal product extension of an almost-pure marginal.
struct ProductExtension {
    enum class Status { Ok, ZeroOverlap };

    Status status = Status::Ok;
    Vector gamma;            // normalized <phi|psi>, a vector on B
    double input_distance = 0.0;  // D(Tr_B psi psi^dag, phi phi^dag)
    double overlap = 0.0;         // |<psi|(phi (x) gamma)>|
    double distance = 0.0;        // D(psi, phi (x) gamma)
    /// distance < 2 * input_distance, the doubled-input form of the bound.
    bool within_twice_input = false;
    /// distance <= 2 sqrt(eps - eps^2/4) (+ tol::kEquality), which is what the
    /// fidelity argument actually yields for pure states.
    bool within_fidelity_bound = false;
};

/// Picks gamma on B maximizing |<psi|(phi (x) gamma)>|; that is the
/// normalized partial inner product <phi|psi>.
///
/// Throws ValidationError when the input distance is >= 2 (vacuous) or phi
/// is not a unit vector of dimension dim_a. A numerically zero partial inner
/// product is reported through Status::ZeroOverlap.
ProductExtension nearest_product_extension(const PureBipartiteState& psi, const Vector& phi);

}  // namespace entlab::qmath
