// random.hpp
// Haar-distributed sampling of states and local unitaries.

#pragma once

#include "gme/state.hpp"

#include <cstdint>
#include <random>

namespace gme {

using Rng = std::mt19937_64;

/// Independent, reproducible stream for sub-task `stream` of a run seeded
/// with `seed`.
Rng substream(std::uint64_t seed, std::uint64_t stream);

/// Uniformly distributed unit vector in C^d.
CVector haar_unit_vector(std::size_t d, Rng& rng);
/// Haar-random pure state on the full joint space.
PureState haar_random_state(const PartyShape& shape, Rng& rng);
/// Product of independent Haar-random factors.
ProductState haar_random_product(const PartyShape& shape, Rng& rng);
/// d x d Haar-random unitary (QR of a Ginibre matrix with phase correction).
CMatrix haar_unitary(std::size_t d, Rng& rng);

}  // namespace gme
