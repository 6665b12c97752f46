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

#include <random>
#include <vector>

#include "entlab/qmath/states.hpp"

namespace entlab::qmath {

using Rng = std::mt19937_64;

/// i.i.d. standard complex Gaussian entries.
Matrix random_ginibre(Rng& rng, Index rows, Index cols);

/// Haar-random unitary via QR with phase correction.
Matrix random_unitary(Rng& rng, Index dim);

Vector random_unit_vector(Rng& rng, Index dim);

/// G G^dag / Tr with G of shape dim x rank (Hilbert-Schmidt measure when
/// rank == dim).
DensityMatrix random_density(Rng& rng, Index dim, Index rank);
inline DensityMatrix random_density(Rng& rng, Index dim) { return random_density(rng, dim, dim); }

PureBipartiteState random_pure_bipartite(Rng& rng, Index dim_a, Index dim_b);

/// Normalized squared row norms of a dim x dim Gaussian matrix, sorted
/// nonincreasing.
std::vector<double> random_spectrum(Rng& rng, Index dim);

}  // namespace entlab::qmath
