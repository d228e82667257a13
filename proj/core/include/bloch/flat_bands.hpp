#pragma once

#include <vector>

#include <gmpxx.h>

#include "bloch/laurent.hpp"

namespace bloch {

struct FlatBand {
  mpq_class r;
  int multiplicity = 0;
};

// Rational roots of gcd_a c_a(lambda) where f = sum_a c_a(lambda) z^a, each
// confirmed by exact division. f must have numeric coefficients.
std::vector<FlatBand> flat_bands(const LaurentPoly& f);

// f divided by prod (lambda - r)^k.
LaurentPoly divide_flat_bands(const LaurentPoly& f, const std::vector<FlatBand>& bands);

// (lambda - r)^k as a Laurent polynomial in d z-variables.
LaurentPoly lambda_factor(int d, const mpq_class& r, int k = 1);

}  // namespace bloch
