#include "bloch/flat_bands.hpp"

#include <map>
#include <stdexcept>

#include "bloch/univariate.hpp"

namespace bloch {

LaurentPoly lambda_factor(int d, const mpq_class& r, int k) {
  LaurentPoly lin = LaurentPoly::lambda(d) - LaurentPoly::constant(d, ParamPoly(r));
  LaurentPoly out = LaurentPoly::constant(d, ParamPoly(1));
  for (int i = 0; i < k; ++i) out = out * lin;
  return out;
}

std::vector<FlatBand> flat_bands(const LaurentPoly& f) {
  if (!f.is_numeric()) throw std::invalid_argument("flat_bands: coefficients must be numeric");
  if (f.is_zero()) throw std::invalid_argument("flat_bands: zero polynomial");
  std::map<IVec, std::vector<mpq_class>> by_z;
  const int d = f.vars();
  for (const auto& t : f.terms()) {
    IVec z(t.e.begin() + 1, t.e.begin() + 1 + d);
    auto& c = by_z[z];
    std::size_t l = static_cast<std::size_t>(t.e[0]);
    if (c.size() <= l) c.resize(l + 1);
    c[l] = t.c.constant_value();
  }
  UPoly g;
  bool first = true;
  for (auto& [z, c] : by_z) {
    UPoly p(c);
    g = first ? p.monic() : gcd(g, p);
    first = false;
    if (g.degree() == 0) return {};
  }
  std::vector<FlatBand> out;
  for (auto& [r, k] : rational_roots(g)) {
    auto q = f.exact_divide(lambda_factor(d, r, k));
    if (!q) throw std::logic_error("flat_bands: gcd root failed exact division");
    out.push_back({r, k});
  }
  return out;
}

LaurentPoly divide_flat_bands(const LaurentPoly& f, const std::vector<FlatBand>& bands) {
  LaurentPoly q = f;
  for (const auto& b : bands) {
    auto r = q.exact_divide(lambda_factor(f.vars(), b.r, b.multiplicity));
    if (!r) throw std::invalid_argument("divide_flat_bands: factor does not divide");
    q = *r;
  }
  return q;
}

}  // namespace bloch
