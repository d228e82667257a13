#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "bloch/laurent.hpp"

namespace bloch {

inline constexpr long kNoAssignment = std::numeric_limits<long>::max() / 4;

// Minimum-cost perfect assignment; entries >= kNoAssignment are forbidden.
// Returns kNoAssignment when no perfect assignment exists.
long min_assignment(const std::vector<std::vector<long>>& cost);

// Lower bounds on w-weights of det(L(z) - lambda I) computed from entry
// supports. The diagonal constant is treated as present with weight 0.
struct WeightBound {
  long trop = kNoAssignment;       // bound over all terms
  long with_constant = kNoAssignment;  // bound over terms using some diagonal constant
};

// L has no lambda on the diagonal; with_lambda adds -lambda at weight w[d].
WeightBound weight_bound(const LaurentMatrix& L, const IVec& w, bool with_lambda);

// True when the weight-`target` part of the determinant cannot involve any
// diagonal constant and no term lies below `target`.
inline bool constant_free_at(const WeightBound& b, long target) {
  return b.trop == target && b.with_constant > target;
}

}  // namespace bloch
