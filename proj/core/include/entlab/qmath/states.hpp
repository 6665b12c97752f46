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

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace entlab::qmath {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using Index = Eigen::Index;

/// Dense Hermitian positive semidefinite operator with unit trace.
///
/// Construction validates the invariants (Hermitian, PSD, trace one, all
/// within tol::kValidity) and stores the symmetrized matrix (A + A^dag)/2.
class DensityMatrix {
   public:
    static DensityMatrix from_matrix(const Matrix& m);
    /// Rank-one projector onto a unit vector.
    static DensityMatrix from_pure(const Vector& v);
    static DensityMatrix diagonal(std::span<const double> probs);
    static DensityMatrix maximally_mixed(Index dim);

    Index dim() const { return m_.rows(); }
    const Matrix& matrix() const { return m_; }

    /// Eigenvalues in nonincreasing order.
    std::vector<double> eigenvalues() const;

   private:
    explicit DensityMatrix(Matrix m) : m_(std::move(m)) {}
    Matrix m_;
};

/// Unit vector on H_A (x) H_B, amplitude index i * dim_b + j.
class PureBipartiteState {
   public:
    static PureBipartiteState from_amplitudes(Index dim_a, Index dim_b, Vector amplitudes);
    static PureBipartiteState product(const Vector& a, const Vector& b);
    /// (1/sqrt d) sum_i |i>|i>.
    static PureBipartiteState maximally_entangled(Index d);
    /// sum_i sqrt(q_i) |i>|i> on a d x d space.
    static PureBipartiteState schmidt_form(std::span<const double> probs);

    Index dim_a() const { return dim_a_; }
    Index dim_b() const { return dim_b_; }
    const Vector& amplitudes() const { return amps_; }
    /// dim_a x dim_b coefficient matrix.
    Matrix coefficient_matrix() const;

   private:
    PureBipartiteState(Index da, Index db, Vector v) : dim_a_(da), dim_b_(db), amps_(std::move(v)) {}
    Index dim_a_;
    Index dim_b_;
    Vector amps_;
};

/// Squared Schmidt coefficients, nonincreasing, summing to one.
class SchmidtProfile {
   public:
    /// Sorts into nonincreasing order; rejects negative entries and sums off
    /// one by more than 1e-12.
    static SchmidtProfile from_probs(std::vector<double> probs);

    const std::vector<double>& probs() const { return probs_; }
    std::size_t size() const { return probs_.size(); }
    double entropy_bits() const;

   private:
    explicit SchmidtProfile(std::vector<double> p) : probs_(std::move(p)) {}
    std::vector<double> probs_;
};

/// Shannon entropy in bits; zero entries contribute nothing.
double entropy_bits(std::span<const double> probs);

}  // namespace entlab::qmath
