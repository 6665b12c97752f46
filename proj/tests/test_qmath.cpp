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
#include <numbers>
#include <numeric>

#include <gtest/gtest.h>

#include "entlab/common.hpp"
#include "entlab/qmath/ops.hpp"
#include "entlab/qmath/random.hpp"
#include "entlab/qmath/serialize.hpp"
#include "entlab/qmath/states.hpp"

namespace {

using namespace entlab;
using namespace entlab::qmath;

Vector basis(Index d, Index i) {
    Vector v = Vector::Zero(d);
    v(i) = 1.0;
    return v;
}

TEST(LogDomain, AddSubSum) {
    EXPECT_DOUBLE_EQ(log2_add(3.0, 3.0), 4.0);
    EXPECT_EQ(log2_add(kNegInf, 2.5), 2.5);
    EXPECT_DOUBLE_EQ(log2_sub(4.0, 3.0), 3.0);
    EXPECT_EQ(log2_sub(1.0, 1.0), kNegInf);
    const std::vector<double> xs{0.0, 0.0, 1.0};
    EXPECT_DOUBLE_EQ(log2_sum(xs), 2.0);
    EXPECT_NEAR(log2_add(-3000.0, -3000.0), -2999.0, 1e-12);
}

TEST(ExtendedCount, ExactAndLog) {
    const auto a = ExtendedCount::from_exact(6);
    const auto b = ExtendedCount::from_log2(std::log2(10.0));
    ASSERT_TRUE(b.exact.has_value());
    EXPECT_EQ(*b.exact, 10u);
    EXPECT_EQ(*(a + b).exact, 16u);
    EXPECT_EQ(*(a * b).exact, 60u);
    const auto big = ExtendedCount::from_log2(300.0);
    EXPECT_FALSE(big.exact.has_value());
    EXPECT_TRUE(a < big);
    EXPECT_NEAR((big + big).log2, 301.0, 1e-12);
    EXPECT_TRUE(ExtendedCount::zero().is_zero());
}

TEST(FormatDouble, RoundTrips) {
    for (double x : {0.1, 1.0 / 3.0, 1e-300, 6.02214076e23, -2.5}) EXPECT_EQ(std::stod(format_double(x)), x);
}

TEST(DensityMatrix, ValidatesInputs) {
    Matrix m = Matrix::Identity(2, 2);
    EXPECT_THROW(DensityMatrix::from_matrix(m), ValidationError);  // trace 2
    m(0, 0) = 1.2;
    m(1, 1) = -0.2;
    EXPECT_THROW(DensityMatrix::from_matrix(m), ValidationError);  // negative
    Matrix h = Matrix::Identity(2, 2) * 0.5;
    h(0, 1) = 0.1;
    EXPECT_THROW(DensityMatrix::from_matrix(h), ValidationError);  // not Hermitian
    EXPECT_NO_THROW(DensityMatrix::maximally_mixed(3));
}

TEST(TraceDistance, OrthogonalAndIdentical) {
    const auto a = DensityMatrix::from_pure(basis(2, 0));
    const auto b = DensityMatrix::from_pure(basis(2, 1));
    EXPECT_NEAR(trace_distance(a, b), 2.0, 1e-15);
    EXPECT_NEAR(trace_distance(a, a), 0.0, 1e-15);
    EXPECT_THROW(trace_distance(a, DensityMatrix::maximally_mixed(3)), ValidationError);
}

TEST(TraceDistance, PureFormulaMatchesMatrixRoute) {
    Rng rng(11);
    for (int i = 0; i < 50; ++i) {
        const Vector a = random_unit_vector(rng, 5);
        const Vector b = random_unit_vector(rng, 5);
        EXPECT_NEAR(pure_trace_distance(a, b), trace_distance(DensityMatrix::from_pure(a), DensityMatrix::from_pure(b)),
                    1e-10);
    }
}

TEST(TraceDistance, WitnessAttainsValue) {
    Rng rng(12);
    for (int i = 0; i < 30; ++i) {
        const auto a = random_density(rng, 4);
        const auto b = random_density(rng, 4, 2);
        const auto w = trace_distance_witness(a, b);
        EXPECT_NEAR(w.value, trace_distance(a, b), 1e-12);
        EXPECT_NEAR(2.0 * (w.projector * (a.matrix() - b.matrix())).trace().real(), w.value, 1e-12);
    }
}

TEST(Schmidt, ReconstructsAndSorts) {
    Rng rng(13);
    for (int i = 0; i < 30; ++i) {
        const auto psi = random_pure_bipartite(rng, 3, 4);
        const auto sd = schmidt_decompose(psi);
        EXPECT_LE((sd.reconstruct() - psi.amplitudes()).norm(), 1e-12);
        const auto& p = sd.profile.probs();
        EXPECT_TRUE(std::is_sorted(p.rbegin(), p.rend()));
        const auto rho = partial_trace(psi, Subsystem::B);
        const auto ev = rho.eigenvalues();
        for (std::size_t k = 0; k < p.size(); ++k) EXPECT_NEAR(p[k], ev[k], 1e-12);
    }
}

TEST(Schmidt, KnownProfile) {
    const std::vector<double> q{0.75, 0.25};
    const auto sd = schmidt_decompose(PureBipartiteState::schmidt_form(q));
    EXPECT_NEAR(sd.profile.probs()[0], 0.75, 1e-15);
    EXPECT_NEAR(sd.profile.entropy_bits(), 0.81127812445913286, 1e-15);
}

TEST(PartialTrace, BothRoutesAgree) {
    Rng rng(14);
    const auto psi = random_pure_bipartite(rng, 3, 2);
    const auto full = DensityMatrix::from_pure(psi.amplitudes());
    for (auto side : {Subsystem::A, Subsystem::B})
        EXPECT_LE((partial_trace(full, side, 3, 2).matrix() - partial_trace(psi, side).matrix()).norm(), 1e-13);
}

TEST(Permute, SwapOfTwoFactors) {
    const Vector v = PureBipartiteState::product(basis(2, 0), basis(3, 2)).amplitudes();
    const std::vector<Index> dims{2, 3};
    const std::vector<std::size_t> perm{1, 0};
    const Vector w = permute_subsystems(v, dims, perm);
    EXPECT_NEAR((w - PureBipartiteState::product(basis(3, 2), basis(2, 0)).amplitudes()).norm(), 0.0, 1e-15);
}

TEST(Fidelity, PureStatesAndBound) {
    const Vector a = basis(2, 0);
    Vector b(2);
    b << std::sqrt(0.5), std::sqrt(0.5);
    EXPECT_NEAR(fidelity(DensityMatrix::from_pure(a), DensityMatrix::from_pure(b)), std::sqrt(0.5), 1e-12);
    Rng rng(15);
    for (int i = 0; i < 100; ++i) {
        const auto x = random_density(rng, 3);
        const auto y = random_density(rng, 3, 1 + i % 3);
        const double f = fidelity(x, y);
        const double d = trace_distance(x, y);
        EXPECT_LE(1.0 - f, d / 2.0 + 1e-9);
        EXPECT_LE(d / 2.0, std::sqrt(1.0 - f * f) + 1e-9);
    }
}

TEST(Rank, EpsilonAndMachine) {
    const std::vector<double> p{0.5, 0.5 - 1e-12, 1e-12, 0.0};
    const auto rho = DensityMatrix::diagonal(p);
    EXPECT_EQ(epsilon_rank(rho, 1e-9), 2);
    EXPECT_EQ(machine_rank(rho.matrix()), 3);
    EXPECT_THROW(epsilon_rank(rho, -1.0), ValidationError);
}

TEST(OperatorNorm, DiagonalAndNonFinite) {
    Matrix m = Matrix::Zero(2, 2);
    m(0, 0) = 3.0;
    m(1, 1) = -4.0;
    EXPECT_NEAR(operator_norm(m), 4.0, 1e-14);
    m(0, 1) = std::numeric_limits<double>::quiet_NaN();
    EXPECT_THROW(operator_norm(m), ValidationError);
}

TEST(ProductExtension, KnownTwoQubitInstance) {
    // sqrt(0.99)|00> + sqrt(0.01)|11> against phi = |0>.
    const std::vector<double> q{0.99, 0.01};
    const auto psi = PureBipartiteState::schmidt_form(q);
    const auto ext = nearest_product_extension(psi, basis(2, 0));
    EXPECT_NEAR(ext.input_distance, 0.02, 1e-12);
    EXPECT_NEAR(ext.distance, 0.2, 1e-12);
    EXPECT_FALSE(ext.within_twice_input);
    EXPECT_TRUE(ext.within_fidelity_bound);
    EXPECT_NEAR(std::abs(ext.gamma(0)), 1.0, 1e-12);
}

TEST(ProductExtension, ZeroOverlapAndVacuous) {
    const auto psi = PureBipartiteState::product(basis(3, 1), basis(2, 0));
    Vector phi = Vector::Zero(3);
    phi(2) = 1.0;
    EXPECT_THROW(nearest_product_extension(psi, phi), ValidationError);  // input distance 2
    EXPECT_THROW(nearest_product_extension(psi, basis(2, 0)), ValidationError);
    const std::vector<double> q{0.5, 0.5};
    const auto bell = PureBipartiteState::schmidt_form(q);
    const auto ext = nearest_product_extension(bell, basis(2, 0));
    EXPECT_EQ(ext.status, ProductExtension::Status::Ok);
    EXPECT_NEAR(ext.input_distance, 1.0, 1e-12);
}

TEST(ProductExtension, FidelityBoundHoldsRandomly) {
    Rng rng(16);
    for (int i = 0; i < 200; ++i) {
        const auto psi = random_pure_bipartite(rng, 3, 3);
        const auto sd = schmidt_decompose(psi);
        const auto ext = nearest_product_extension(psi, sd.basis_a.col(0));
        EXPECT_TRUE(ext.within_fidelity_bound) << ext.distance << " vs eps " << ext.input_distance;
    }
}

TEST(Random, UnitaryAndDensity) {
    Rng rng(17);
    const Matrix u = random_unitary(rng, 5);
    EXPECT_LE((u.adjoint() * u - Matrix::Identity(5, 5)).norm(), 1e-12);
    const auto rho = random_density(rng, 6, 2);
    EXPECT_EQ(epsilon_rank(rho, 1e-9), 2);
    EXPECT_THROW(random_density(rng, 3, 4), ValidationError);
    const auto spec = random_spectrum(rng, 7);
    EXPECT_NEAR(std::accumulate(spec.begin(), spec.end(), 0.0), 1.0, 1e-12);
}

TEST(Random, SeedDeterminism) {
    Rng a(99), b(99);
    EXPECT_EQ(random_unitary(a, 3), random_unitary(b, 3));
}

TEST(Serialize, MatrixRoundTrip) {
    Rng rng(18);
    const Matrix m = random_ginibre(rng, 2, 3);
    EXPECT_EQ(matrix_from_json(matrix_to_json(m)), m);
    EXPECT_THROW(matrix_from_json("{\"rows\":2}"), ValidationError);
    EXPECT_THROW(matrix_from_json("not json"), ValidationError);
}

}  // namespace
