#pragma once

#include <vector>

#include "bloch/laurent.hpp"

namespace bloch {

// Div_{j,sigma}(f): nonnegative generator of the j-th coordinates of vectors in
// the Z-span of supp(f) that vanish on sigma \ {j}. Indices are 1-based z
// variables; 0 means only the zero vector qualifies.
long div_j_sigma(const LaurentPoly& f, int j, const std::vector<int>& sigma);

// Same invariant on an explicit point set in (z, lambda) layout.
long div_j_sigma(const std::vector<IVec>& support, int j, const std::vector<int>& sigma);

}  // namespace bloch
