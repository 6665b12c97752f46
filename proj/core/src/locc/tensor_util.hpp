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

// Helpers for operators acting on a few tensor factors of a larger space.

#include <numeric>
#include <vector>

#include "entlab/qmath/ops.hpp"

namespace entlab::locc::detail {

using qmath::Index;
using qmath::Matrix;
using qmath::Vector;

inline Index product(const std::vector<Index>& dims) {
    return std::accumulate(dims.begin(), dims.end(), Index{1}, std::multiplies<>());
}

/// Applies a square `op` to the factors at `positions` (first most significant).
inline Vector apply_on(const Vector& v, const std::vector<Index>& dims, const std::vector<int>& positions, const Matrix& op) {
    std::vector<std::size_t> perm;
    std::vector<bool> used(dims.size(), false);
    for (int p : positions) {
        perm.push_back(static_cast<std::size_t>(p));
        used[static_cast<std::size_t>(p)] = true;
    }
    for (std::size_t i = 0; i < dims.size(); ++i)
        if (!used[i]) perm.push_back(i);
    std::vector<Index> pdims;
    for (std::size_t i : perm) pdims.push_back(dims[i]);
    std::vector<std::size_t> inv(perm.size());
    for (std::size_t i = 0; i < perm.size(); ++i) inv[perm[i]] = i;

    const Vector w = qmath::permute_subsystems(v, dims, perm);
    const Index t = op.rows();
    const Index rest = w.size() / t;
    using RowMajor = Eigen::Matrix<qmath::Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
    const Eigen::Map<const RowMajor> in(w.data(), t, rest);
    RowMajor out = op * in;
    const Eigen::Map<const Vector> flat(out.data(), out.size());
    return qmath::permute_subsystems(Vector(flat), pdims, inv);
}

/// Column-wise apply_on.
inline Matrix apply_on_columns(const Matrix& m, const std::vector<Index>& dims, const std::vector<int>& positions,
                               const Matrix& op) {
    Matrix out(m.rows(), m.cols());
    for (Index c = 0; c < m.cols(); ++c) out.col(c) = apply_on(m.col(c), dims, positions, op);
    return out;
}

/// |v> -> |v> (x) |a>, a new least significant factor.
inline Vector append_factor(const Vector& v, const Vector& a) {
    Vector out(v.size() * a.size());
    for (Index i = 0; i < v.size(); ++i) out.segment(i * a.size(), a.size()) = v(i) * a;
    return out;
}

/// Coherent projective measurement of factor `pos` in the basis given by the
/// columns of `basis`: |x> -> sum_v (|b_v><b_v| x) (x) |v>, record appended last.
inline Vector record_measurement(const Vector& v, const std::vector<Index>& dims, int pos, const Matrix& basis) {
    const Index d = basis.cols();
    Vector out = Vector::Zero(v.size() * d);
    for (Index k = 0; k < d; ++k) {
        const Matrix proj = basis.col(k) * basis.col(k).adjoint();
        const Vector part = apply_on(v, dims, {pos}, proj);
        for (Index i = 0; i < v.size(); ++i) out(i * d + k) = part(i);
    }
    return out;
}

/// Diagonal projector onto value `value` of factor `pos`, as a full-space matrix.
inline Matrix factor_value_projector(const std::vector<Index>& dims, int pos, Index value) {
    const Index total = product(dims);
    Index stride = 1;
    for (std::size_t i = static_cast<std::size_t>(pos) + 1; i < dims.size(); ++i) stride *= dims[i];
    const Index d = dims[static_cast<std::size_t>(pos)];
    Matrix p = Matrix::Zero(total, total);
    for (Index i = 0; i < total; ++i)
        if ((i / stride) % d == value) p(i, i) = 1.0;
    return p;
}

}  // namespace entlab::locc::detail
