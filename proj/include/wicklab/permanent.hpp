#pragma once

#include "wicklab/types.hpp"

namespace wicklab {

inline constexpr Index default_permanent_cap = 12;

// Ryser inclusion-exclusion over column subsets visited in Gray-code order,
// O(2^n n). Throws SizeOverflow above the cap; the 0x0 permanent is 1.
cplx permanent(const CMatrix& a, Index cap = default_permanent_cap);

} // namespace wicklab
