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


#include "entlab/locc/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>

#include "entlab/common.hpp"
#include "entlab/qmath/ops.hpp"
#include "tensor_util.hpp"

namespace entlab::locc {

using qmath::Index;
using qmath::Matrix;
using qmath::Vector;

namespace {

constexpr double kDropProb = 1e-24;

// Density on `keep` (in the given order) from a vector whose factors are
// listed in `order`.
Matrix reduce_to(const Vector& v, const std::vector<Index>& factor_dims, const std::vector<int>& order,
                 const std::vector<int>& keep) {
    std::vector<std::size_t> perm;
    std::vector<bool> used(order.size(), false);
    for (int r : keep) {
        const auto pos = static_cast<std::size_t>(std::find(order.begin(), order.end(), r) - order.begin());
        perm.push_back(pos);
        used[pos] = true;
    }
    for (std::size_t i = 0; i < order.size(); ++i)
        if (!used[i]) perm.push_back(i);
    std::vector<Index> pdims;
    for (std::size_t i : perm) pdims.push_back(factor_dims[i]);
    auto mask = std::make_unique<bool[]>(perm.size());
    for (std::size_t i = 0; i < perm.size(); ++i) mask[i] = i < keep.size();
    const Vector w = qmath::permute_subsystems(v, factor_dims, perm);
    return qmath::reduce_pure(w, pdims, std::span<const bool>(mask.get(), perm.size()));
}

}  // namespace

double DenseEnsemble::total_prob() const {
    double s = 0.0;
    for (const auto& b : branches) s += b.prob;
    return s;
}

std::vector<TranscriptOutput> DenseEnsemble::by_transcript() const {
    std::vector<int> order(dims.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::map<Transcript, TranscriptOutput> acc;
    for (const auto& b : branches) {
        auto& t = acc[b.sent];
        const Matrix rho = reduce_to(b.state, dims, order, kept);
        if (t.density.size() == 0) {
            t.sent = b.sent;
            t.density = Matrix::Zero(rho.rows(), rho.cols());
        }
        t.prob += b.prob;
        t.density += b.prob * rho;
    }
    std::vector<TranscriptOutput> out;
    for (auto& [key, t] : acc) {
        if (t.prob > 0) t.density /= t.prob;
        out.push_back(std::move(t));
    }
    return out;
}

DenseEnsemble simulate_dense(const ProtocolIR& ir, const qmath::PureBipartiteState& input, Index dim_cap) {
    ir.validate();
    const auto& regs = ir.registers();
    if (input.dim_a() != regs[0].dim || input.dim_b() != regs[1].dim)
        throw ValidationError("input state dimensions do not match the program inputs");
    Index total = 1;
    for (const auto& r : regs) {
        if (total > dim_cap / r.dim) throw CapExceededError("total Hilbert dimension exceeds " + std::to_string(dim_cap));
        total *= r.dim;
    }

    struct Live {
        std::vector<std::pair<std::string, int>> outcomes;
        Transcript sent;
        Vector v;  // unnormalized; squared norm is the branch probability
    };
    std::vector<int> order = {0, 1};
    std::vector<Index> fdims = {regs[0].dim, regs[1].dim};
    std::vector<Live> live = {{{}, {}, input.amplitudes()}};

    auto pos_of = [&](int reg) { return static_cast<int>(std::find(order.begin(), order.end(), reg) - order.begin()); };

    for (const auto& ins : ir.instructions()) {
        switch (ins.kind) {
            case OpKind::AddAncilla:
                for (auto& b : live) b.v = detail::append_factor(b.v, ins.state);
                order.push_back(ins.registers[0]);
                fdims.push_back(ins.state.size());
                break;
            case OpKind::Unitary: {
                std::vector<int> pos;
                for (int r : ins.registers) pos.push_back(pos_of(r));
                for (auto& b : live) {
                    std::size_t which = 0;
                    if (!ins.label.empty()) {
                        auto it = std::find_if(b.outcomes.begin(), b.outcomes.end(), [&](const auto& o) { return o.first == ins.label; });
                        which = static_cast<std::size_t>(it->second);
                    }
                    b.v = detail::apply_on(b.v, fdims, pos, ins.matrices[which]);
                }
                break;
            }
            case OpKind::Measure: {
                const int pos = pos_of(ins.registers[0]);
                const Matrix& basis = ins.matrices[0];
                std::vector<Live> next;
                for (const auto& b : live) {
                    for (Index k = 0; k < basis.cols(); ++k) {
                        Vector w = detail::apply_on(b.v, fdims, {pos}, basis.col(k) * basis.col(k).adjoint());
                        if (w.squaredNorm() < kDropProb) continue;
                        Live nb{b.outcomes, b.sent, std::move(w)};
                        nb.outcomes.emplace_back(ins.label, static_cast<int>(k));
                        next.push_back(std::move(nb));
                    }
                }
                live = std::move(next);
                break;
            }
            case OpKind::Send:
                for (auto& b : live) {
                    auto it = std::find_if(b.outcomes.begin(), b.outcomes.end(), [&](const auto& o) { return o.first == ins.label; });
                    b.sent.push_back(*it);
                }
                break;
            case OpKind::Discard:
                break;  // traced out when the ensemble is reduced
        }
    }

    DenseEnsemble e;
    for (const auto& r : regs) e.dims.push_back(r.dim);
    for (int r : ir.kept_registers(Party::Alice)) {
        e.kept.push_back(r);
        e.kept_dim_a *= regs[static_cast<std::size_t>(r)].dim;
    }
    for (int r : ir.kept_registers(Party::Bob)) {
        e.kept.push_back(r);
        e.kept_dim_b *= regs[static_cast<std::size_t>(r)].dim;
    }
    // Restore id order so every branch state uses the documented layout.
    std::vector<std::size_t> to_id(order.size());
    for (std::size_t i = 0; i < order.size(); ++i) to_id[static_cast<std::size_t>(order[i])] = i;
    for (auto& b : live) {
        const double p = b.v.squaredNorm();
        Vector s = qmath::permute_subsystems(b.v, fdims, to_id) / std::sqrt(p);
        e.branches.push_back({std::move(b.outcomes), std::move(b.sent), p, std::move(s)});
    }
    return e;
}

std::vector<TranscriptOutput> standard_form_outputs(const StandardFormProtocol& proto, const qmath::PureBipartiteState& input) {
    const auto xs = apply_standard_form(proto, input);
    const std::vector<Index> dims = {proto.dim_a_out, proto.dim_a_anc, proto.dim_b_out, proto.dim_b_anc};
    const bool keep[] = {true, false, true, false};
    std::vector<TranscriptOutput> out;
    for (std::size_t k = 0; k < xs.size(); ++k) {
        TranscriptOutput t;
        if (!proto.transcripts.empty()) t.sent = proto.transcripts[k];
        t.prob = xs[k].squaredNorm();
        t.density = qmath::reduce_pure(xs[k], dims, keep);
        if (t.prob > 0) t.density /= t.prob;
        out.push_back(std::move(t));
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.sent < b.sent; });
    return out;
}

EnsembleComparison compare_ensembles(const std::vector<TranscriptOutput>& a, const std::vector<TranscriptOutput>& b,
                                     double negligible) {
    std::map<Transcript, std::pair<const TranscriptOutput*, const TranscriptOutput*>> joined;
    for (const auto& t : a) joined[t.sent].first = &t;
    for (const auto& t : b) joined[t.sent].second = &t;
    EnsembleComparison c;
    for (const auto& [key, pair] : joined) {
        const double pa = pair.first ? pair.first->prob : 0.0;
        const double pb = pair.second ? pair.second->prob : 0.0;
        c.total_variation += 0.5 * std::abs(pa - pb);
        if (pa < negligible && pb < negligible) continue;
        if (!pair.first || !pair.second || pa < negligible || pb < negligible) {
            c.transcripts_match = false;
            continue;
        }
        if (pair.first->density.rows() != pair.second->density.rows()) {
            c.transcripts_match = false;
            continue;
        }
        const double d = qmath::trace_norm_hermitian(pair.first->density - pair.second->density);
        c.max_trace_distance = std::max(c.max_trace_distance, d);
    }
    return c;
}

}  // namespace entlab::locc
