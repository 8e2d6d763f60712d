#pragma once

#include <cstdint>
#include <random>

#include "qmin/types.hpp"

namespace qmin {

using Rng = std::mt19937_64;

/// Entries i.i.d. complex normal with unit variance.
[[nodiscard]] ComplexMatrix gaussian_matrix(std::size_t rows, std::size_t cols,
                                            Rng& rng);

/// Haar unitary via QR of a Ginibre matrix with the R-diagonal phases removed.
[[nodiscard]] ComplexMatrix haar_unitary(std::size_t d, Rng& rng);

/// Orthonormal columns spanning a Haar-random subspace.
[[nodiscard]] ComplexMatrix haar_isometry(std::size_t d, std::size_t k, Rng& rng);

} // namespace qmin
