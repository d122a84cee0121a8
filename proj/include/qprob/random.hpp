// Copyright 2026 The qprob Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "qprob/operator.hpp"

namespace qprob {

using Seed = std::uint64_t;
using Rng = std::mt19937_64;

/**
 * Engine for substream `stream` of `seed`.
 *
 * The engine is seeded through std::seed_seq over the 32-bit halves of
 * (seed, stream), so distinct streams of one seed are decorrelated and
 * stream 0 is the engine used by the single-seed helpers below.
 */
Rng make_rng(Seed seed, std::uint64_t stream = 0);

/** d x d matrix of i.i.d. standard complex Gaussians (E|z|^2 = 1). */
Matrix ginibre_matrix(std::size_t dim, Rng& rng);

/** Ginibre density G G^dagger / Tr(G G^dagger). */
DensityOperator random_density(std::size_t dim, Rng& rng);
DensityOperator random_density(std::size_t dim, Seed seed);

/**
 * Unitary from Gram-Schmidt orthonormalisation of a Ginibre matrix.
 *
 * Each column is rotated so its first nonzero entry is real positive.
 * A rank-deficient draw is discarded and redrawn.
 */
UnitaryOperator random_unitary(std::size_t dim, Rng& rng);
UnitaryOperator random_unitary(std::size_t dim, Seed seed);

/** Unnormalised Wishart-type positive operator G G^dagger. */
PositiveOperator random_positive(std::size_t dim, Rng& rng);

/** Hermitian (G + G^dagger)/2. */
HermitianOperator random_hermitian(std::size_t dim, Rng& rng);

/** Haar-random pure state. */
StateVector random_state_vector(std::size_t dim, Rng& rng);

/**
 * Random complete POVM with `outcomes` full-rank elements.
 *
 * Draws positive P_i and returns S^{-1/2} P_i S^{-1/2} with S = sum_i P_i.
 */
std::vector<PositiveOperator> random_povm_elements(std::size_t dim,
                                                   std::size_t outcomes,
                                                   Rng& rng);

/** Probability vector drawn uniformly from the simplex. */
std::vector<double> random_probabilities(std::size_t n, Rng& rng);

}  // namespace qprob
