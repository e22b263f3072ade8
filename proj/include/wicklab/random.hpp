#pragma once

#include <cstdint>
#include <random>

#include "wicklab/types.hpp"

namespace wicklab {

using Rng = std::mt19937_64;

// Entries i.i.d. standard complex normal (real and imaginary parts N(0, 1/2)).
CVector random_vector(Rng& rng, Index n);
CMatrix random_matrix(Rng& rng, Index rows, Index cols);
CMatrix random_hermitian(Rng& rng, Index n);
// Haar-distributed unitary (QR of a Ginibre matrix with phase correction).
CMatrix random_unitary(Rng& rng, Index n);

} // namespace wicklab
