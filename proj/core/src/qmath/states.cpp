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

#include "entlab/qmath/states.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <string>

#include "entlab/common.hpp"
#include "entlab/qmath/ops.hpp"

namespace entlab::qmath {

DensityMatrix DensityMatrix::from_matrix(const Matrix& m) {
    if (m.rows() == 0 || m.rows() != m.cols()) throw ValidationError("density matrix must be square and nonempty");
    if (!m.allFinite()) throw ValidationError("density matrix has non-finite entries");
    const double asym = (m - m.adjoint()).cwiseAbs().maxCoeff();
    if (asym > tol::kValidity) throw ValidationError("density matrix is not Hermitian (deviation " + format_double(asym) + ")");
    Matrix h = (m + m.adjoint()) * 0.5;
    const double tr = h.trace().real();
    if (std::abs(tr - 1.0) > tol::kValidity) throw ValidationError("density matrix trace is " + format_double(tr));
    const auto eig = hermitian_eigenvalues(h);
    if (eig.back() < -tol::kValidity) throw ValidationError("density matrix has negative eigenvalue " + format_double(eig.back()));
    return DensityMatrix(std::move(h));
}

DensityMatrix DensityMatrix::from_pure(const Vector& v) {
    if (v.size() == 0) throw ValidationError("empty state vector");
    if (std::abs(v.norm() - 1.0) > tol::kValidity) throw ValidationError("state vector is not normalized");
    return DensityMatrix(v * v.adjoint());
}

DensityMatrix DensityMatrix::diagonal(std::span<const double> probs) {
    Matrix m = Matrix::Zero(static_cast<Index>(probs.size()), static_cast<Index>(probs.size()));
    for (std::size_t i = 0; i < probs.size(); ++i) m(static_cast<Index>(i), static_cast<Index>(i)) = probs[i];
    return from_matrix(m);
}

DensityMatrix DensityMatrix::maximally_mixed(Index dim) {
    if (dim <= 0) throw ValidationError("dimension must be positive");
    return DensityMatrix(Matrix::Identity(dim, dim) / static_cast<double>(dim));
}

std::vector<double> DensityMatrix::eigenvalues() const { return hermitian_eigenvalues(m_); }

PureBipartiteState PureBipartiteState::from_amplitudes(Index dim_a, Index dim_b, Vector amplitudes) {
    if (dim_a <= 0 || dim_b <= 0) throw ValidationError("subsystem dimensions must be positive");
    if (amplitudes.size() != dim_a * dim_b) throw ValidationError("amplitude count does not match dim_a * dim_b");
    const double norm = amplitudes.norm();
    if (std::abs(norm * norm - 1.0) > tol::kValidity) throw ValidationError("bipartite state is not normalized");
    return PureBipartiteState(dim_a, dim_b, std::move(amplitudes));
}

PureBipartiteState PureBipartiteState::product(const Vector& a, const Vector& b) {
    Vector v(a.size() * b.size());
    for (Index i = 0; i < a.size(); ++i) v.segment(i * b.size(), b.size()) = a(i) * b;
    return from_amplitudes(a.size(), b.size(), std::move(v));
}

PureBipartiteState PureBipartiteState::maximally_entangled(Index d) {
    if (d <= 0) throw ValidationError("dimension must be positive");
    Vector v = Vector::Zero(d * d);
    const double amp = 1.0 / std::sqrt(static_cast<double>(d));
    for (Index i = 0; i < d; ++i) v(i * d + i) = amp;
    return PureBipartiteState(d, d, std::move(v));
}

PureBipartiteState PureBipartiteState::schmidt_form(std::span<const double> probs) {
    const auto d = static_cast<Index>(probs.size());
    if (d == 0) throw ValidationError("empty Schmidt profile");
    Vector v = Vector::Zero(d * d);
    for (Index i = 0; i < d; ++i) {
        if (probs[static_cast<std::size_t>(i)] < 0) throw ValidationError("negative Schmidt probability");
        v(i * d + i) = std::sqrt(probs[static_cast<std::size_t>(i)]);
    }
    return from_amplitudes(d, d, std::move(v));
}

Matrix PureBipartiteState::coefficient_matrix() const {
    Matrix c(dim_a_, dim_b_);
    for (Index i = 0; i < dim_a_; ++i)
        for (Index j = 0; j < dim_b_; ++j) c(i, j) = amps_(i * dim_b_ + j);
    return c;
}

SchmidtProfile SchmidtProfile::from_probs(std::vector<double> probs) {
    if (probs.empty()) throw ValidationError("empty Schmidt profile");
    for (double p : probs) {
        if (!(p >= 0.0) || p > 1.0 + tol::kOracle) throw ValidationError("Schmidt probabilities must lie in [0,1]");
    }
    const double total = std::accumulate(probs.begin(), probs.end(), 0.0);
    if (std::abs(total - 1.0) > 1e-12) throw ValidationError("Schmidt probabilities sum to " + format_double(total));
    std::sort(probs.begin(), probs.end(), std::greater<>());
    return SchmidtProfile(std::move(probs));
}

double SchmidtProfile::entropy_bits() const { return qmath::entropy_bits(probs_); }

double entropy_bits(std::span<const double> probs) {
    double h = 0.0;
    for (double p : probs)
        if (p > 0) h -= p * std::log2(p);
    return h;
}

}  // namespace entlab::qmath
