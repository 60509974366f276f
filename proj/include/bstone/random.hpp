#pragma once

#include <cstdint>
#include <random>

#include "bstone/algebra.hpp"

namespace bstone {

using Rng = std::mt19937_64;

/// One step of the splitmix64 generator.
std::uint64_t splitmix64(std::uint64_t x);

/// Per-trial seed: splitmix64(seed + (index + 1) * 0x9E3779B97F4A7C15).
/// Trials seeded this way are independent of execution order.
std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t index);

/// n x n matrix with i.i.d. standard complex Gaussian entries.
Matrix gaussian_matrix(int n, Rng& rng);

/// Haar-distributed unitary: QR of a complex Gaussian matrix with the phases
/// of R's diagonal folded back into Q.
Matrix haar_unitary(int n, Rng& rng);

BlockElement random_element(const AlgebraShape& shape, Rng& rng);
BlockElement random_unitary(const AlgebraShape& shape, Rng& rng);
/// Gaussian element symmetrized to x = (g + g*) / 2.
BlockElement random_selfadjoint(const AlgebraShape& shape, Rng& rng);
/// Haar-rotated projection; the rank of each block is uniform in [0, n_i].
BlockElement random_projection(const AlgebraShape& shape, Rng& rng);

}  // namespace bstone
