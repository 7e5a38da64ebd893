#pragma once

// Seeded random inputs for tests, benchmarks and the CLI generators.

#include <random>

#include "givens/basis.hpp"
#include "givens/common.hpp"

namespace givens {

/// Haar-random d x d unitary: QR of a complex Gaussian matrix with the phases
/// of R's diagonal folded back into Q.
Matrix random_unitary(Eigen::Index d, std::mt19937_64& rng);

/// Normalized state with independent complex Gaussian amplitudes.
SubspaceState random_state(const SubspaceMap& map, std::mt19937_64& rng);

}  // namespace givens
