// Deterministic sampling utilities. Every randomized routine in the library
// takes an explicit generator so results are reproducible from (seed, id).
#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "entkit/linalg.hpp"

namespace entkit {

using Rng = std::mt19937_64;

/// Derives an independent stream from a master seed and a stream label, so
/// independent constructions can run in any order without sharing state.
Rng rng_stream(std::uint64_t seed, const std::string& stream_id);

/// Haar-random unit vector (independent complex Gaussian entries, normalized).
Vector random_unit_vector(int dim, Rng& rng);

/// Product of per-party Haar-random unit vectors.
Vector random_product_vector(std::span<const int> dims, Rng& rng);

/// Projector onto a Haar-random product vector, as a density operator.
HermitianOperator random_product_state(std::span<const int> dims, Rng& rng);

/// Convex mixture of a few random product states (separable by construction).
HermitianOperator random_separable_state(std::span<const int> dims, int n_terms,
                                         Rng& rng);

/// Random full-rank density operator (normalized G G^dagger).
HermitianOperator random_density(std::vector<int> dims, Rng& rng);

/// Random Hermitian matrix with entries of order one.
HermitianOperator random_hermitian(std::vector<int> dims, Rng& rng);

/// k x d co-isometry (P P^dagger = I_k) from the QR of a Gaussian matrix.
Matrix random_co_isometry(int k, int d, Rng& rng);

/// Schmidt vector drawn from the flat simplex, sorted descending. Entries
/// below `floor_value` are resampled away so downstream support thresholds
/// stay meaningful.
std::vector<double> random_schmidt_coefficients(int d, Rng& rng,
                                                double floor_value = 5e-3);

}  // namespace entkit
