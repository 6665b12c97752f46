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


#include "entlab/qmath/random.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "entlab/common.hpp"

namespace entlab::qmath {

Matrix random_ginibre(Rng& rng, Index rows, Index cols) {
    std::normal_distribution<double> normal(0.0, 1.0);
    Matrix g(rows, cols);
    for (Index i = 0; i < rows; ++i)
        for (Index j = 0; j < cols; ++j) g(i, j) = Complex(normal(rng), normal(rng));
    return g;
}

Matrix random_unitary(Rng& rng, Index dim) {
    if (dim <= 0) throw ValidationError("dimension must be positive");
    Eigen::HouseholderQR<Matrix> qr(random_ginibre(rng, dim, dim));
    Matrix q = qr.householderQ();
    const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Index j = 0; j < dim; ++j) {
        const double mag = std::abs(r(j, j));
        if (mag > 0) q.col(j) *= r(j, j) / mag;
    }
    return q;
}

Vector random_unit_vector(Rng& rng, Index dim) {
    if (dim <= 0) throw ValidationError("dimension must be positive");
    Vector v = random_ginibre(rng, dim, 1).col(0);
    return v / v.norm();
}

DensityMatrix random_density(Rng& rng, Index dim, Index rank) {
    if (dim <= 0 || rank <= 0 || rank > dim) throw ValidationError("need 0 < rank <= dim");
    const Matrix g = random_ginibre(rng, dim, rank);
    Matrix rho = g * g.adjoint();
    rho /= rho.trace().real();
    return DensityMatrix::from_matrix(rho);
}

PureBipartiteState random_pure_bipartite(Rng& rng, Index dim_a, Index dim_b) {
    return PureBipartiteState::from_amplitudes(dim_a, dim_b, random_unit_vector(rng, dim_a * dim_b));
}

std::vector<double> random_spectrum(Rng& rng, Index dim) {
    const Matrix g = random_ginibre(rng, dim, dim);
    std::vector<double> p(static_cast<std::size_t>(dim));
    double total = 0.0;
    for (Index i = 0; i < dim; ++i) {
        p[static_cast<std::size_t>(i)] = g.row(i).squaredNorm();
        total += p[static_cast<std::size_t>(i)];
    }
    for (double& x : p) x /= total;
    std::sort(p.begin(), p.end(), std::greater<>());
    return p;
}

}  // namespace entlab::qmath
