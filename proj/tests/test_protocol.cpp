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

#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "entlab/common.hpp"
#include "entlab/locc/protocol_ir.hpp"
#include "entlab/locc/simulate.hpp"
#include "entlab/locc/standard_form.hpp"
#include "entlab/locc/standardize.hpp"
#include "entlab/qmath/ops.hpp"
#include "entlab/qmath/random.hpp"

namespace {

using namespace entlab;
using namespace entlab::locc;
using qmath::Matrix;
using qmath::PureBipartiteState;
using qmath::Vector;

const Matrix kI2 = Matrix::Identity(2, 2);

Matrix hadamard() {
    Matrix h(2, 2);
    h << 1, 1, 1, -1;
    return h / std::sqrt(2.0);
}

Vector ket(qmath::Index dim, qmath::Index i) {
    Vector v = Vector::Zero(dim);
    v(i) = 1.0;
    return v;
}

ProtocolIR bob_measures_and_sends() {
    ProtocolIR ir(2, 2);
    ir.measure(Party::Bob, 1, kI2, "b");
    ir.send(Party::Bob, "b");
    return ir;
}

TEST(ProtocolIR, ValidationCatchesMisuse) {
    {
        ProtocolIR ir(2, 2);
        ir.unitary(Party::Alice, {1}, kI2);
        EXPECT_THROW(ir.validate(), ValidationError);
    }
    {
        ProtocolIR ir(2, 2);
        ir.discard(Party::Alice, 0);
        ir.unitary(Party::Alice, {0}, kI2);
        EXPECT_THROW(ir.validate(), ValidationError);
    }
    {
        ProtocolIR ir(2, 2);
        ir.send(Party::Alice, "never_recorded");
        EXPECT_THROW(ir.validate(), ValidationError);
    }
    {
        ProtocolIR ir(2, 2);
        ir.measure(Party::Bob, 1, kI2, "b");
        ir.send(Party::Bob, "b");
        ir.send(Party::Bob, "b");
        EXPECT_THROW(ir.validate(), ValidationError);
    }
    {
        ProtocolIR ir(2, 2);
        Matrix bad = kI2;
        bad(0, 1) = 0.5;
        ir.unitary(Party::Alice, {0}, bad);
        EXPECT_THROW(ir.validate(), ValidationError);
    }
    {
        ProtocolIR ir(2, 2);
        ir.measure(Party::Bob, 1, kI2, "b");
        ir.controlled_unitary(Party::Alice, {0}, "b", {kI2, kI2});
        EXPECT_THROW(ir.validate(), ValidationError);  // Alice never received b
    }
    EXPECT_NO_THROW(bob_measures_and_sends().validate());
}

TEST(ProtocolIR, MessageBitsAndLabels) {
    ProtocolIR ir(3, 2);
    ir.measure(Party::Alice, 0, Matrix::Identity(3, 3), "a");
    ir.send(Party::Alice, "a");
    ir.measure(Party::Bob, 1, kI2, "b");
    ir.send(Party::Bob, "b");
    EXPECT_EQ(ir.message_bits(), 3);
    EXPECT_EQ(ir.label_dim("a"), 3);
    EXPECT_EQ(ir.sent_labels(), (std::vector<std::string>{"a", "b"}));
}

TEST(ProtocolIR, JsonRoundTrip) {
    qmath::Rng rng(5);
    for (int i = 0; i < 10; ++i) {
        const auto toy = random_toy_ir(rng);
        const auto back = ProtocolIR::from_json(toy.ir.to_json());
        EXPECT_EQ(back.to_json(), toy.ir.to_json());
        EXPECT_EQ(back.message_bits(), toy.ir.message_bits());
    }
    EXPECT_THROW(ProtocolIR::from_json("{not json"), ValidationError);
}

TEST(SimulateDense, EmptyProgramIsIdentity) {
    const auto phi = PureBipartiteState::maximally_entangled(2);
    const auto ens = simulate_dense(ProtocolIR(2, 2), phi);
    ASSERT_EQ(ens.branches.size(), 1u);
    EXPECT_NEAR(ens.branches[0].prob, 1.0, 1e-15);
    EXPECT_NEAR(qmath::pure_trace_distance(ens.branches[0].state, phi.amplitudes()), 0.0, 1e-12);
}

TEST(SimulateDense, BobMeasuresBellPair) {
    ProtocolIR ir(2, 2);
    ir.measure(Party::Bob, 1, kI2, "b");
    const auto ens = simulate_dense(ir, PureBipartiteState::maximally_entangled(2));
    ASSERT_EQ(ens.branches.size(), 2u);
    EXPECT_NEAR(ens.total_prob(), 1.0, 1e-15);
    for (const auto& br : ens.branches) {
        EXPECT_NEAR(br.prob, 0.5, 1e-15);
        const int b = br.outcomes.at(0).second;
        const qmath::Index idx = b == 0 ? 0 : 3;
        EXPECT_NEAR(std::abs(br.state(idx)), 1.0, 1e-14);
    }
}

TEST(SimulateDense, DimensionCap) {
    ProtocolIR ir(4, 4);
    ir.add_ancilla(Party::Alice, ket(4, 0));
    EXPECT_THROW(simulate_dense(ir, PureBipartiteState::maximally_entangled(4), 32), CapExceededError);
}

TEST(StandardForm, ValidationAndCompleteness) {
    StandardFormProtocol p;
    p.dim_a_in = p.dim_b_in = p.dim_a_out = p.dim_b_out = 2;
    p.alice_ops = {kI2};
    p.bob_ops = {kI2};
    EXPECT_NO_THROW(p.validate());
    EXPECT_NEAR(p.completeness_error(), 0.0, 1e-15);
    p.alice_ops = {kI2 * 0.5};
    EXPECT_THROW(p.validate(), ValidationError);
    p.alice_ops = {kI2 * std::sqrt(0.5), kI2 * std::sqrt(0.5), kI2 * 0.0};
    p.bob_ops = {kI2, kI2, kI2};
    EXPECT_THROW(p.validate(), ValidationError);  // three outcomes need c >= 2
    p.message_bits = 2;
    EXPECT_NO_THROW(p.validate());
}

TEST(Standardize, AlreadyStandardForm) {
    // Alice measures in the Hadamard basis and tells Bob, who corrects.
    ProtocolIR ir(2, 2);
    ir.measure(Party::Alice, 0, hadamard(), "a");
    ir.send(Party::Alice, "a");
    Matrix z = kI2;
    z(1, 1) = -1;
    ir.controlled_unitary(Party::Bob, {1}, "a", {kI2, z});
    const auto phi = PureBipartiteState::maximally_entangled(2);
    const auto sf = standardize(ir, phi);
    EXPECT_EQ(sf.migration_residual, 0.0);
    EXPECT_EQ(sf.protocol.message_bits, 1);
    ASSERT_EQ(sf.protocol.outcome_count(), 2u);
    const auto cmp = compare_ensembles(simulate_dense(ir, phi).by_transcript(), standard_form_outputs(sf.protocol, phi));
    EXPECT_TRUE(cmp.transcripts_match);
    EXPECT_LE(cmp.total_variation, 1e-12);
    EXPECT_LE(cmp.max_trace_distance, 1e-12);
}

TEST(Standardize, BobMeasurementMovesToAlice) {
    const auto ir = bob_measures_and_sends();
    const auto phi = PureBipartiteState::maximally_entangled(2);
    const auto sf = standardize(ir, phi);
    EXPECT_NO_THROW(sf.protocol.validate());
    EXPECT_EQ(sf.protocol.message_bits, 1);
    EXPECT_LE(sf.migration_residual, 1e-12);
    for (const auto& u : sf.protocol.bob_ops) {
        const Matrix g = u.adjoint() * u;
        EXPECT_LE((g - Matrix::Identity(g.rows(), g.cols())).norm(), 1e-12);
    }
    const auto cmp = compare_ensembles(simulate_dense(ir, phi).by_transcript(), standard_form_outputs(sf.protocol, phi));
    EXPECT_TRUE(cmp.transcripts_match);
    EXPECT_LE(cmp.total_variation, 1e-12);
    EXPECT_LE(cmp.max_trace_distance, 1e-12);
}

TEST(Standardize, RandomProgramsMatchDenseSimulation) {
    qmath::Rng rng(2026);
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
        const auto toy = random_toy_ir(rng);
        const auto sf = standardize(toy.ir, toy.input);
        EXPECT_EQ(sf.protocol.message_bits, toy.ir.message_bits()) << i;
        EXPECT_LE(sf.protocol.completeness_error(), tol::kValidity) << i;
        const auto cmp =
            compare_ensembles(simulate_dense(toy.ir, toy.input).by_transcript(), standard_form_outputs(sf.protocol, toy.input));
        EXPECT_TRUE(cmp.transcripts_match) << i;
        worst = std::max({worst, cmp.total_variation, cmp.max_trace_distance});
    }
    EXPECT_LE(worst, tol::kEquality);
}

TEST(DiagonalKraus, DenseFormIsComplete) {
    DiagonalKraus k;
    k.dim = 2;
    k.message_bits = 1;
    k.weights = {{0.75, 0.25}, {0.25, 0.75}};
    k.perms = {{0, 1}, {1, 0}};
    EXPECT_NO_THROW(k.validate());
    const auto dense = k.to_dense();
    EXPECT_NO_THROW(dense.validate());
    EXPECT_LE(dense.completeness_error(), 1e-15);
    k.weights[1][0] = 0.3;
    EXPECT_THROW(k.validate(), ValidationError);
}

TEST(CeilLog2, SmallValues) {
    EXPECT_EQ(ceil_log2(1), 0);
    EXPECT_EQ(ceil_log2(2), 1);
    EXPECT_EQ(ceil_log2(3), 2);
    EXPECT_EQ(ceil_log2(1024), 10);
    EXPECT_EQ(ceil_log2(1025), 11);
}

}  // namespace
