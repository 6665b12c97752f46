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


#include "entlab/locc/standardize.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "entlab/common.hpp"
#include "tensor_util.hpp"

namespace entlab::locc {

using qmath::Index;
using qmath::Matrix;
using qmath::Vector;

namespace {

struct Factor {
    int reg;             // register id, or -1 for a measurement record
    std::string record;  // label of the record
    Index dim;
    bool discarded = false;
};

struct Space {
    std::vector<Factor> factors;

    std::vector<Index> dims() const {
        std::vector<Index> d;
        for (const auto& f : factors) d.push_back(f.dim);
        return d;
    }
    int pos_reg(int r) const {
        for (std::size_t i = 0; i < factors.size(); ++i)
            if (factors[i].reg == r) return static_cast<int>(i);
        throw ValidationError("register not in this party's space");
    }
    int pos_record(const std::string& label) const {
        for (std::size_t i = 0; i < factors.size(); ++i)
            if (factors[i].reg < 0 && factors[i].record == label) return static_cast<int>(i);
        throw ValidationError("record '" + label + "' not in this party's space");
    }
};

struct Path {
    Matrix m;  // Alice: current space <- H_Ain
    Matrix u;  // Bob: current space <- H_Bin
    Transcript sent;
    std::map<std::string, int> known;
};

Matrix append_rows(const Matrix& x, const Vector& a) {
    Matrix out(x.rows() * a.size(), x.cols());
    for (Index c = 0; c < x.cols(); ++c) out.col(c) = detail::append_factor(x.col(c), a);
    return out;
}

Matrix record_rows(const Matrix& x, const std::vector<Index>& dims, int pos, const Matrix& basis) {
    Matrix out(x.rows() * basis.cols(), x.cols());
    for (Index c = 0; c < x.cols(); ++c) out.col(c) = detail::record_measurement(x.col(c), dims, pos, basis);
    return out;
}

// Spectral functions of a PSD matrix with eigenvalues below `cut` treated as zero.
struct PsdRoots {
    Matrix sqrt;
    Matrix inv_sqrt;
    Matrix kernel;
};

PsdRoots psd_roots(const Matrix& rho) {
    Eigen::SelfAdjointEigenSolver<Matrix> es((rho + rho.adjoint()) * 0.5);
    const auto& lam = es.eigenvalues();
    const double top = lam.size() ? std::max(0.0, lam.maxCoeff()) : 0.0;
    const double cut = top * 1e-12;
    Eigen::VectorXd s(lam.size()), is(lam.size()), k(lam.size());
    for (Index i = 0; i < lam.size(); ++i) {
        const bool on = top > 0 && lam(i) > cut;
        s(i) = on ? std::sqrt(lam(i)) : 0.0;
        is(i) = on ? 1.0 / std::sqrt(lam(i)) : 0.0;
        k(i) = on ? 0.0 : 1.0;
    }
    const Matrix& v = es.eigenvectors();
    return {v * s.asDiagonal() * v.adjoint(), v * is.asDiagonal() * v.adjoint(), v * k.asDiagonal() * v.adjoint()};
}

// Row permutation putting kept registers first (in factor order).
Matrix split_kept(const Matrix& x, const Space& space, Index& kept_dim, Index& anc_dim) {
    std::vector<std::size_t> perm;
    kept_dim = anc_dim = 1;
    for (std::size_t i = 0; i < space.factors.size(); ++i)
        if (space.factors[i].reg >= 0 && !space.factors[i].discarded) {
            perm.push_back(i);
            kept_dim *= space.factors[i].dim;
        }
    for (std::size_t i = 0; i < space.factors.size(); ++i)
        if (!(space.factors[i].reg >= 0 && !space.factors[i].discarded)) {
            perm.push_back(i);
            anc_dim *= space.factors[i].dim;
        }
    const auto dims = space.dims();
    Matrix out(x.rows(), x.cols());
    for (Index c = 0; c < x.cols(); ++c) out.col(c) = qmath::permute_subsystems(x.col(c), dims, perm);
    return out;
}

constexpr double kNegligibleOp = 1e-13;

}  // namespace

StandardizeResult standardize(const ProtocolIR& ir, const qmath::PureBipartiteState& input) {
    ir.validate();
    const auto& regs = ir.registers();
    if (input.dim_a() != regs[0].dim || input.dim_b() != regs[1].dim)
        throw ValidationError("input state dimensions do not match the program inputs");

    StandardizeResult result;
    Space space[2];
    space[0].factors.push_back({0, {}, regs[0].dim});
    space[1].factors.push_back({1, {}, regs[1].dim});
    std::vector<Path> paths = {{Matrix::Identity(regs[0].dim, regs[0].dim), Matrix::Identity(regs[1].dim, regs[1].dim), {}, {}}};
    const Matrix coeff = input.coefficient_matrix();

    auto ops_of = [](Path& p, Party party) -> Matrix& { return party == Party::Alice ? p.m : p.u; };

    for (const auto& ins : ir.instructions()) {
        const int pi = ins.party == Party::Alice ? 0 : 1;
        Space& sp = space[pi];
        switch (ins.kind) {
            case OpKind::AddAncilla:
                for (auto& p : paths) ops_of(p, ins.party) = append_rows(ops_of(p, ins.party), ins.state);
                sp.factors.push_back({ins.registers[0], {}, ins.state.size()});
                break;
            case OpKind::Unitary: {
                const auto dims = sp.dims();
                std::vector<int> pos;
                for (int r : ins.registers) pos.push_back(sp.pos_reg(r));
                for (auto& p : paths) {
                    Matrix& x = ops_of(p, ins.party);
                    if (ins.label.empty()) {
                        x = detail::apply_on_columns(x, dims, pos, ins.matrices[0]);
                    } else if (auto it = p.known.find(ins.label); it != p.known.end()) {
                        x = detail::apply_on_columns(x, dims, pos, ins.matrices[static_cast<std::size_t>(it->second)]);
                    } else {
                        // Control by an unsent local record: sum_v |v><v| (x) U_v.
                        const Index t = ins.matrices[0].rows();
                        const auto nv = static_cast<Index>(ins.matrices.size());
                        Matrix ctl = Matrix::Zero(nv * t, nv * t);
                        for (Index v = 0; v < nv; ++v) ctl.block(v * t, v * t, t, t) = ins.matrices[static_cast<std::size_t>(v)];
                        std::vector<int> cpos = {sp.pos_record(ins.label)};
                        cpos.insert(cpos.end(), pos.begin(), pos.end());
                        x = detail::apply_on_columns(x, dims, cpos, ctl);
                    }
                }
                break;
            }
            case OpKind::Measure: {
                const auto dims = sp.dims();
                const int pos = sp.pos_reg(ins.registers[0]);
                for (auto& p : paths) ops_of(p, ins.party) = record_rows(ops_of(p, ins.party), dims, pos, ins.matrices[0]);
                sp.factors.push_back({-1, ins.label, ins.matrices[0].cols()});
                break;
            }
            case OpKind::Send: {
                const auto dims = sp.dims();
                const int pos = sp.pos_record(ins.label);
                const Index nv = dims[static_cast<std::size_t>(pos)];
                std::vector<Path> next;
                for (const auto& p : paths) {
                    if (ins.party == Party::Alice) {
                        for (Index v = 0; v < nv; ++v) {
                            Matrix mv = detail::factor_value_projector(dims, pos, v) * p.m;
                            if (mv.norm() < kNegligibleOp) continue;
                            Path np{std::move(mv), p.u, p.sent, p.known};
                            np.sent.emplace_back(ins.label, static_cast<int>(v));
                            np.known[ins.label] = static_cast<int>(v);
                            next.push_back(std::move(np));
                        }
                        continue;
                    }
                    // Bob's outcome v is reproduced by Alice's G_v and Bob's
                    // unitary Y_v: (G_v (x) Y_v)|Phi> = (1 (x) Pi_v)|Phi>.
                    const Matrix phi = p.m * coeff * p.u.transpose();
                    const PsdRoots whole = psd_roots(phi * phi.adjoint());
                    for (Index v = 0; v < nv; ++v) {
                        const Matrix proj = detail::factor_value_projector(dims, pos, v);
                        const Matrix branch = phi * proj;  // (1 (x) Pi_v)|Phi>, Pi_v real diagonal
                        Matrix g = psd_roots(branch * branch.adjoint()).sqrt * whole.inv_sqrt;
                        if (v == 0) g += whole.kernel;
                        const Matrix moved = g * phi;
                        Eigen::JacobiSVD<Matrix> svd(moved.adjoint() * branch, Eigen::ComputeFullU | Eigen::ComputeFullV);
                        const Matrix w = svd.matrixU() * svd.matrixV().adjoint();
                        result.migration_residual = std::max(result.migration_residual, (moved * w - branch).norm());
                        Matrix mv = g * p.m;
                        if (mv.norm() < kNegligibleOp) continue;
                        Path np{std::move(mv), w.transpose() * p.u, p.sent, p.known};
                        np.sent.emplace_back(ins.label, static_cast<int>(v));
                        np.known[ins.label] = static_cast<int>(v);
                        next.push_back(std::move(np));
                    }
                }
                paths = std::move(next);
                break;
            }
            case OpKind::Discard:
                sp.factors[static_cast<std::size_t>(sp.pos_reg(ins.registers[0]))].discarded = true;
                break;
        }
    }

    auto& proto = result.protocol;
    proto.dim_a_in = regs[0].dim;
    proto.dim_b_in = regs[1].dim;
    proto.message_bits = ir.message_bits();
    for (const auto& p : paths) {
        proto.alice_ops.push_back(split_kept(p.m, space[0], proto.dim_a_out, proto.dim_a_anc));
        proto.bob_ops.push_back(split_kept(p.u, space[1], proto.dim_b_out, proto.dim_b_anc));
        proto.transcripts.push_back(p.sent);
    }
    return result;
}

}  // namespace entlab::locc
