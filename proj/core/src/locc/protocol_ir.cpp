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


#include "entlab/locc/protocol_ir.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include <json.hpp>

#include "entlab/common.hpp"
#include "entlab/locc/standard_form.hpp"
#include "entlab/qmath/ops.hpp"

namespace entlab::locc {
namespace {

using nlohmann::json;
using qmath::Complex;
using qmath::Index;
using qmath::Matrix;
using qmath::Vector;

struct LabelInfo {
    Party owner;
    Index dim;
    bool known[2] = {false, false};
    bool sent = false;
};

int idx(Party p) { return p == Party::Alice ? 0 : 1; }

bool is_unitary(const Matrix& u) {
    return u.rows() == u.cols() && qmath::operator_norm(u.adjoint() * u - Matrix::Identity(u.rows(), u.cols())) <= tol::kValidity;
}

json matrix_json(const Matrix& m) {
    json data = json::array();
    for (Index i = 0; i < m.rows(); ++i)
        for (Index j = 0; j < m.cols(); ++j) data.push_back({m(i, j).real(), m(i, j).imag()});
    return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

Matrix matrix_from(const json& j) {
    const auto rows = j.at("rows").get<Index>();
    const auto cols = j.at("cols").get<Index>();
    const auto& data = j.at("data");
    if (static_cast<Index>(data.size()) != rows * cols) throw ValidationError("IR JSON: matrix data length mismatch");
    Matrix m(rows, cols);
    for (Index k = 0; k < rows * cols; ++k) {
        const auto& e = data.at(static_cast<std::size_t>(k));
        m(k / cols, k % cols) = Complex(e.at(0).get<double>(), e.at(1).get<double>());
    }
    return m;
}

const char* op_name(OpKind k) {
    switch (k) {
        case OpKind::AddAncilla: return "add_ancilla";
        case OpKind::Unitary: return "unitary";
        case OpKind::Measure: return "measure";
        case OpKind::Send: return "send";
        case OpKind::Discard: return "discard";
    }
    return "?";
}

OpKind op_from(const std::string& s) {
    if (s == "add_ancilla") return OpKind::AddAncilla;
    if (s == "unitary") return OpKind::Unitary;
    if (s == "measure") return OpKind::Measure;
    if (s == "send") return OpKind::Send;
    if (s == "discard") return OpKind::Discard;
    throw ValidationError("IR JSON: unknown op '" + s + "'");
}

Party party_from(const std::string& s) {
    if (s == "A") return Party::Alice;
    if (s == "B") return Party::Bob;
    throw ValidationError("IR JSON: party must be \"A\" or \"B\"");
}

}  // namespace

const char* party_name(Party p) { return p == Party::Alice ? "A" : "B"; }
Party other(Party p) { return p == Party::Alice ? Party::Bob : Party::Alice; }

ProtocolIR::ProtocolIR(Index input_dim_a, Index input_dim_b) {
    if (input_dim_a < 1 || input_dim_b < 1) throw ValidationError("input dimensions must be positive");
    registers_.push_back({Party::Alice, input_dim_a});
    registers_.push_back({Party::Bob, input_dim_b});
}

int ProtocolIR::add_ancilla(Party party, Vector state) {
    const int id = static_cast<int>(registers_.size());
    registers_.push_back({party, state.size()});
    instructions_.push_back({OpKind::AddAncilla, party, {id}, std::move(state), {}, {}});
    return id;
}

void ProtocolIR::unitary(Party party, std::vector<int> registers, Matrix u) {
    instructions_.push_back({OpKind::Unitary, party, std::move(registers), {}, {std::move(u)}, {}});
}

void ProtocolIR::controlled_unitary(Party party, std::vector<int> registers, std::string label, std::vector<Matrix> us) {
    instructions_.push_back({OpKind::Unitary, party, std::move(registers), {}, std::move(us), std::move(label)});
}

void ProtocolIR::measure(Party party, int reg, Matrix basis, std::string label) {
    instructions_.push_back({OpKind::Measure, party, {reg}, {}, {std::move(basis)}, std::move(label)});
}

void ProtocolIR::send(Party from, std::string label) {
    instructions_.push_back({OpKind::Send, from, {}, {}, {}, std::move(label)});
}

void ProtocolIR::discard(Party party, int reg) { instructions_.push_back({OpKind::Discard, party, {reg}, {}, {}, {}}); }

void ProtocolIR::validate() const {
    const auto nreg = static_cast<int>(registers_.size());
    std::vector<bool> created(registers_.size(), false);
    std::vector<bool> measured(registers_.size(), false);
    std::vector<bool> discarded(registers_.size(), false);
    created[0] = created[1] = true;
    std::map<std::string, LabelInfo> labels;

    auto check_reg = [&](int r, Party p, std::size_t at) {
        if (r < 0 || r >= nreg || !created[static_cast<std::size_t>(r)])
            throw ValidationError("instruction " + std::to_string(at) + ": unknown register " + std::to_string(r));
        if (registers_[static_cast<std::size_t>(r)].party != p)
            throw ValidationError("instruction " + std::to_string(at) + ": register belongs to the other party");
        if (discarded[static_cast<std::size_t>(r)])
            throw ValidationError("instruction " + std::to_string(at) + ": register used after discard");
    };

    for (std::size_t at = 0; at < instructions_.size(); ++at) {
        const auto& ins = instructions_[at];
        const std::string where = "instruction " + std::to_string(at) + ": ";
        switch (ins.kind) {
            case OpKind::AddAncilla: {
                if (ins.registers.size() != 1) throw ValidationError(where + "ancilla needs one register");
                const int r = ins.registers[0];
                if (r < 2 || r >= nreg || created[static_cast<std::size_t>(r)])
                    throw ValidationError(where + "ancilla register is invalid or reused");
                const auto& info = registers_[static_cast<std::size_t>(r)];
                if (info.party != ins.party || info.dim != ins.state.size() || info.dim < 1)
                    throw ValidationError(where + "ancilla state does not match its register");
                if (std::abs(ins.state.norm() - 1.0) > tol::kValidity) throw ValidationError(where + "ancilla state is not normalized");
                created[static_cast<std::size_t>(r)] = true;
                break;
            }
            case OpKind::Unitary: {
                if (ins.registers.empty()) throw ValidationError(where + "unitary needs target registers");
                std::set<int> distinct(ins.registers.begin(), ins.registers.end());
                if (distinct.size() != ins.registers.size()) throw ValidationError(where + "repeated target register");
                Index dim = 1;
                for (int r : ins.registers) {
                    check_reg(r, ins.party, at);
                    if (measured[static_cast<std::size_t>(r)])
                        throw ValidationError(where + "unitary writes to a measured register");
                    dim *= registers_[static_cast<std::size_t>(r)].dim;
                }
                std::size_t expected = 1;
                if (!ins.label.empty()) {
                    auto it = labels.find(ins.label);
                    if (it == labels.end() || !it->second.known[idx(ins.party)])
                        throw ValidationError(where + "control label '" + ins.label + "' is not held by the party");
                    expected = static_cast<std::size_t>(it->second.dim);
                }
                if (ins.matrices.size() != expected) throw ValidationError(where + "need one matrix per control value");
                for (const auto& u : ins.matrices) {
                    if (u.rows() != dim || u.cols() != dim) throw ValidationError(where + "matrix size does not match targets");
                    if (!is_unitary(u)) throw ValidationError(where + "matrix is not unitary");
                }
                break;
            }
            case OpKind::Measure: {
                if (ins.registers.size() != 1 || ins.matrices.size() != 1) throw ValidationError(where + "malformed measurement");
                const int r = ins.registers[0];
                check_reg(r, ins.party, at);
                if (measured[static_cast<std::size_t>(r)]) throw ValidationError(where + "register measured twice");
                const Index d = registers_[static_cast<std::size_t>(r)].dim;
                if (ins.matrices[0].rows() != d || !is_unitary(ins.matrices[0]))
                    throw ValidationError(where + "measurement basis must be a unitary of the register dimension");
                if (ins.label.empty() || labels.count(ins.label)) throw ValidationError(where + "measurement label empty or reused");
                LabelInfo li{ins.party, d};
                li.known[idx(ins.party)] = true;
                labels.emplace(ins.label, li);
                measured[static_cast<std::size_t>(r)] = true;
                break;
            }
            case OpKind::Send: {
                auto it = labels.find(ins.label);
                if (it == labels.end()) throw ValidationError(where + "send of unknown label '" + ins.label + "'");
                if (it->second.owner != ins.party) throw ValidationError(where + "only the measuring party can send a label");
                if (it->second.sent) throw ValidationError(where + "label sent twice");
                it->second.sent = true;
                it->second.known[idx(other(ins.party))] = true;
                break;
            }
            case OpKind::Discard: {
                if (ins.registers.size() != 1) throw ValidationError(where + "discard needs one register");
                check_reg(ins.registers[0], ins.party, at);
                discarded[static_cast<std::size_t>(ins.registers[0])] = true;
                break;
            }
        }
    }
    for (int r = 2; r < nreg; ++r)
        if (!created[static_cast<std::size_t>(r)]) throw ValidationError("register " + std::to_string(r) + " is never created");
}

Index ProtocolIR::label_dim(const std::string& label) const {
    for (const auto& ins : instructions_)
        if (ins.kind == OpKind::Measure && ins.label == label) return registers_[static_cast<std::size_t>(ins.registers[0])].dim;
    throw ValidationError("unknown label '" + label + "'");
}

std::vector<std::string> ProtocolIR::sent_labels() const {
    std::vector<std::string> out;
    for (const auto& ins : instructions_)
        if (ins.kind == OpKind::Send) out.push_back(ins.label);
    return out;
}

int ProtocolIR::message_bits() const {
    int bits = 0;
    for (const auto& l : sent_labels()) bits += ceil_log2(static_cast<std::uint64_t>(label_dim(l)));
    return bits;
}

std::vector<int> ProtocolIR::kept_registers(Party party) const {
    std::vector<bool> dropped(registers_.size(), false);
    for (const auto& ins : instructions_)
        if (ins.kind == OpKind::Discard) dropped[static_cast<std::size_t>(ins.registers[0])] = true;
    std::vector<int> out;
    for (std::size_t r = 0; r < registers_.size(); ++r)
        if (registers_[r].party == party && !dropped[r]) out.push_back(static_cast<int>(r));
    return out;
}

std::string ProtocolIR::to_json() const {
    json regs = json::array();
    for (const auto& r : registers_) regs.push_back({{"party", party_name(r.party)}, {"dim", r.dim}});
    json ins = json::array();
    for (const auto& i : instructions_) {
        json j = {{"op", op_name(i.kind)}, {"party", party_name(i.party)}};
        switch (i.kind) {
            case OpKind::AddAncilla: {
                json st = json::array();
                for (Index k = 0; k < i.state.size(); ++k) st.push_back({i.state(k).real(), i.state(k).imag()});
                j["register"] = i.registers[0];
                j["state"] = std::move(st);
                break;
            }
            case OpKind::Unitary:
                j["registers"] = i.registers;
                if (i.label.empty()) {
                    j["matrix"] = matrix_json(i.matrices.at(0));
                } else {
                    j["control"] = i.label;
                    json ms = json::array();
                    for (const auto& m : i.matrices) ms.push_back(matrix_json(m));
                    j["matrices"] = std::move(ms);
                }
                break;
            case OpKind::Measure:
                j["register"] = i.registers[0];
                j["basis"] = matrix_json(i.matrices.at(0));
                j["label"] = i.label;
                break;
            case OpKind::Send: j["label"] = i.label; break;
            case OpKind::Discard: j["register"] = i.registers[0]; break;
        }
        ins.push_back(std::move(j));
    }
    return json{{"registers", std::move(regs)}, {"instructions", std::move(ins)}}.dump();
}

ProtocolIR ProtocolIR::from_json(std::string_view text) {
    try {
        const auto j = json::parse(text);
        const auto& regs = j.at("registers");
        if (regs.size() < 2 || party_from(regs[0].at("party")) != Party::Alice || party_from(regs[1].at("party")) != Party::Bob)
            throw ValidationError("IR JSON: registers 0 and 1 must be Alice's and Bob's inputs");
        ProtocolIR ir(regs[0].at("dim").get<Index>(), regs[1].at("dim").get<Index>());
        for (std::size_t r = 2; r < regs.size(); ++r)
            ir.registers_.push_back({party_from(regs[r].at("party")), regs[r].at("dim").get<Index>()});
        for (const auto& i : j.at("instructions")) {
            Instruction ins{op_from(i.at("op")), party_from(i.at("party")), {}, {}, {}, {}};
            switch (ins.kind) {
                case OpKind::AddAncilla: {
                    ins.registers = {i.at("register").get<int>()};
                    const auto& st = i.at("state");
                    ins.state.resize(static_cast<Index>(st.size()));
                    for (std::size_t k = 0; k < st.size(); ++k)
                        ins.state(static_cast<Index>(k)) = Complex(st[k].at(0).get<double>(), st[k].at(1).get<double>());
                    break;
                }
                case OpKind::Unitary:
                    ins.registers = i.at("registers").get<std::vector<int>>();
                    if (i.contains("control")) {
                        ins.label = i.at("control").get<std::string>();
                        for (const auto& m : i.at("matrices")) ins.matrices.push_back(matrix_from(m));
                    } else {
                        ins.matrices.push_back(matrix_from(i.at("matrix")));
                    }
                    break;
                case OpKind::Measure:
                    ins.registers = {i.at("register").get<int>()};
                    ins.matrices.push_back(matrix_from(i.at("basis")));
                    ins.label = i.at("label").get<std::string>();
                    break;
                case OpKind::Send: ins.label = i.at("label").get<std::string>(); break;
                case OpKind::Discard: ins.registers = {i.at("register").get<int>()}; break;
            }
            ir.instructions_.push_back(std::move(ins));
        }
        ir.validate();
        return ir;
    } catch (const json::exception& e) {
        throw ValidationError(std::string("IR JSON: ") + e.what());
    }
}

ToyInstance random_toy_ir(qmath::Rng& rng, const ToyOptions& options) {
    std::uniform_int_distribution<int> local_dim(2, std::max(2, options.max_local_dim));
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    const Index da = local_dim(rng);
    const Index db = local_dim(rng);
    ProtocolIR ir(da, db);

    // Per-party bookkeeping: live unmeasured registers, held labels and the
    // space size including the records a later rewrite will add.
    std::vector<int> live[2] = {{0}, {1}};
    std::vector<std::string> held[2];
    std::vector<std::string> unsent[2];
    Index budget[2] = {da, db};
    int label_count = 0;

    const int rounds = std::uniform_int_distribution<int>(1, std::max(1, options.max_rounds))(rng);
    for (int round = 0; round < rounds; ++round) {
        const Party p = coin(rng) < 0.5 ? Party::Alice : Party::Bob;
        const int pi = idx(p);

        const Index anc_dim = local_dim(rng);
        if ((live[pi].empty() || coin(rng) < 0.4) && budget[pi] * anc_dim <= options.max_party_dim) {
            live[pi].push_back(ir.add_ancilla(p, qmath::random_unit_vector(rng, anc_dim)));
            budget[pi] *= anc_dim;
        }
        if (live[pi].empty()) continue;

        auto pick = [&]() { return live[pi][std::uniform_int_distribution<std::size_t>(0, live[pi].size() - 1)(rng)]; };
        auto dim_of = [&](int r) { return ir.registers()[static_cast<std::size_t>(r)].dim; };

        // Local unitary, on two registers when there are two.
        std::vector<int> targets = {pick()};
        if (live[pi].size() > 1 && coin(rng) < 0.5) {
            int second = pick();
            if (second != targets[0]) targets.push_back(second);
        }
        Index tdim = 1;
        for (int r : targets) tdim *= dim_of(r);
        ir.unitary(p, targets, qmath::random_unitary(rng, tdim));

        // Unitary controlled by a label the party already holds.
        if (!held[pi].empty() && coin(rng) < 0.6) {
            const auto& label = held[pi][std::uniform_int_distribution<std::size_t>(0, held[pi].size() - 1)(rng)];
            const int r = pick();
            std::vector<Matrix> us;
            for (Index v = 0; v < ir.label_dim(label); ++v) us.push_back(qmath::random_unitary(rng, dim_of(r)));
            ir.controlled_unitary(p, {r}, label, std::move(us));
        }

        // Measure and usually send.
        const int r = pick();
        if (budget[pi] * dim_of(r) <= options.max_party_dim) {
            const std::string label = "m" + std::to_string(label_count++);
            ir.measure(p, r, qmath::random_unitary(rng, dim_of(r)), label);
            budget[pi] *= dim_of(r);
            std::erase(live[pi], r);
            held[pi].push_back(label);
            if (coin(rng) < 0.8) {
                ir.send(p, label);
                held[1 - pi].push_back(label);
            } else {
                unsent[pi].push_back(label);
            }
        }
    }
    // Drop some registers at the end.
    for (std::size_t r = 0; r < ir.registers().size(); ++r)
        if (coin(rng) < 0.3) ir.discard(ir.registers()[r].party, static_cast<int>(r));

    auto input = qmath::random_pure_bipartite(rng, da, db);
    ir.validate();
    return {std::move(ir), std::move(input)};
}

}  // namespace entlab::locc
