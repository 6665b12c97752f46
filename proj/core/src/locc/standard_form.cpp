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


#include "entlab/locc/standard_form.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "entlab/common.hpp"
#include "entlab/qmath/ops.hpp"

namespace entlab::locc {

int ceil_log2(std::uint64_t k) {
    if (k == 0) throw ValidationError("ceil_log2 of zero");
    return k == 1 ? 0 : static_cast<int>(std::bit_width(k - 1));
}

double StandardFormProtocol::completeness_error() const {
    Matrix sum = Matrix::Zero(dim_a_in, dim_a_in);
    for (const auto& m : alice_ops) sum += m.adjoint() * m;
    return qmath::operator_norm(sum - Matrix::Identity(dim_a_in, dim_a_in));
}

double StandardFormProtocol::isometry_error() const {
    double worst = 0.0;
    for (const auto& u : bob_ops)
        worst = std::max(worst, qmath::operator_norm(u.adjoint() * u - Matrix::Identity(dim_b_in, dim_b_in)));
    return worst;
}

void StandardFormProtocol::validate() const {
    if (alice_ops.empty()) throw ValidationError("protocol has no outcomes");
    if (alice_ops.size() != bob_ops.size()) throw ValidationError("Alice and Bob operator counts differ");
    if (message_bits < 0 || message_bits > 62 || alice_ops.size() > (std::uint64_t{1} << message_bits))
        throw ValidationError("more outcomes than 2^c");
    for (const auto& m : alice_ops)
        if (m.rows() != dim_a_out * dim_a_anc || m.cols() != dim_a_in) throw ValidationError("Alice operator has wrong shape");
    for (const auto& u : bob_ops)
        if (u.rows() != dim_b_out * dim_b_anc || u.cols() != dim_b_in) throw ValidationError("Bob operator has wrong shape");
    if (!transcripts.empty() && transcripts.size() != alice_ops.size())
        throw ValidationError("transcript count does not match outcome count");
    const double ce = completeness_error();
    if (ce > tol::kValidity) throw ValidationError("Kraus family is incomplete (error " + format_double(ce) + ")");
    const double ie = isometry_error();
    if (ie > tol::kValidity) throw ValidationError("Bob correction is not an isometry (error " + format_double(ie) + ")");
}

std::vector<Vector> apply_standard_form(const StandardFormProtocol& proto, const qmath::PureBipartiteState& input) {
    if (input.dim_a() != proto.dim_a_in || input.dim_b() != proto.dim_b_in)
        throw ValidationError("input dimensions do not match the protocol");
    const Matrix c = input.coefficient_matrix();
    std::vector<Vector> out;
    out.reserve(proto.outcome_count());
    for (std::size_t k = 0; k < proto.outcome_count(); ++k) {
        // (M (x) U)|psi> has coefficient matrix M C U^T.
        const Matrix phi = proto.alice_ops[k] * c * proto.bob_ops[k].transpose();
        Vector v(phi.size());
        for (Index i = 0; i < phi.rows(); ++i) v.segment(i * phi.cols(), phi.cols()) = phi.row(i).transpose();
        out.push_back(std::move(v));
    }
    return out;
}

double DiagonalKraus::completeness_error() const {
    double worst = 0.0;
    for (Index j = 0; j < dim; ++j) {
        double s = 0.0;
        for (const auto& w : weights) s += w[static_cast<std::size_t>(j)];
        worst = std::max(worst, std::abs(s - 1.0));
    }
    return worst;
}

void DiagonalKraus::validate() const {
    if (dim < 1 || weights.empty()) throw ValidationError("diagonal protocol needs dim >= 1 and an outcome");
    if (weights.size() != perms.size()) throw ValidationError("weight and permutation counts differ");
    if (message_bits < 0 || message_bits > 62 || weights.size() > (std::uint64_t{1} << message_bits))
        throw ValidationError("more outcomes than 2^c");
    const auto d = static_cast<std::size_t>(dim);
    for (std::size_t k = 0; k < weights.size(); ++k) {
        if (weights[k].size() != d || perms[k].size() != d) throw ValidationError("outcome vectors must have length dim");
        for (double w : weights[k])
            if (!(w >= 0.0)) throw ValidationError("weights must be nonnegative");
        std::vector<bool> seen(d, false);
        for (Index p : perms[k]) {
            if (p < 0 || p >= dim || seen[static_cast<std::size_t>(p)]) throw ValidationError("relabeling is not a permutation");
            seen[static_cast<std::size_t>(p)] = true;
        }
    }
    if (completeness_error() > 1e-12) throw ValidationError("diagonal weights are not complete per position");
}

StandardFormProtocol DiagonalKraus::to_dense() const {
    StandardFormProtocol p;
    p.dim_a_in = p.dim_b_in = p.dim_a_out = p.dim_b_out = dim;
    p.message_bits = message_bits;
    for (std::size_t k = 0; k < weights.size(); ++k) {
        Matrix m = Matrix::Zero(dim, dim);
        Matrix u = Matrix::Zero(dim, dim);
        for (Index j = 0; j < dim; ++j) {
            const Index to = perms[k][static_cast<std::size_t>(j)];
            m(to, j) = std::sqrt(weights[k][static_cast<std::size_t>(j)]);
            u(to, j) = 1.0;
        }
        p.alice_ops.push_back(std::move(m));
        p.bob_ops.push_back(std::move(u));
    }
    return p;
}

}  // namespace entlab::locc
