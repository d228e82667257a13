#pragma once

#include <gmpxx.h>

#include <string>
#include <utility>
#include <vector>

namespace bloch {

// Dense polynomial over Q in one variable, coefficient of x^k at index k.
class UPoly {
 public:
  UPoly() = default;
  explicit UPoly(std::vector<mpq_class> c);
  static UPoly linear_root(const mpq_class& r);  // x - r

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<mpq_class>& coeffs() const { return c_; }
  const mpq_class& lead() const { return c_.back(); }

  UPoly operator*(const UPoly& o) const;
  UPoly operator-(const UPoly& o) const;
  UPoly derivative() const;
  UPoly monic() const;
  mpq_class operator()(const mpq_class& x) const;
  bool operator==(const UPoly& o) const { return c_ == o.c_; }

  // Quotient and remainder.
  std::pair<UPoly, UPoly> divmod(const UPoly& g) const;
  std::string to_string(const std::string& var = "l") const;

 private:
  std::vector<mpq_class> c_;
  void trim();
};

UPoly gcd(UPoly a, UPoly b);

// Distinct rational roots, ascending, with multiplicities.
std::vector<std::pair<mpq_class, int>> rational_roots(const UPoly& f);

// Number of distinct real roots in (a, b] via a Sturm sequence.
int sturm_count(const std::vector<UPoly>& seq, const mpq_class& a, const mpq_class& b);
std::vector<UPoly> sturm_sequence(const UPoly& f);

}  // namespace bloch
