#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "bloch/param_poly.hpp"

namespace bloch {

inline constexpr int kMaxZVars = 7;

// e[0] is the lambda exponent, e[1..d] the z exponents. Lexicographic order on
// the array is the canonical (lambda, z) term order.
using Exponent = std::array<std::int32_t, kMaxZVars + 1>;

// Integer point in (z_1, ..., z_d, lambda) coordinates, the layout used by
// Newton polytopes and exposing vectors.
using IVec = std::vector<long>;

class LaurentPoly {
 public:
  struct Term {
    Exponent e;
    ParamPoly c;
  };

  LaurentPoly() = default;
  explicit LaurentPoly(int d);
  static LaurentPoly constant(int d, const ParamPoly& c);
  static LaurentPoly monomial(int d, const std::vector<int>& z, int l, const ParamPoly& c);
  static LaurentPoly z(int d, int i, int power = 1);  // i is 1-based
  static LaurentPoly lambda(int d);

  int vars() const { return d_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  const std::vector<Term>& terms() const { return terms_; }

  LaurentPoly& operator+=(const LaurentPoly& o);
  LaurentPoly& operator-=(const LaurentPoly& o);
  LaurentPoly operator-() const;
  LaurentPoly scaled(const ParamPoly& c) const;
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
  LaurentPoly& operator*=(const LaurentPoly& o) { return *this = *this * o; }
  bool operator==(const LaurentPoly& o) const;
  bool operator!=(const LaurentPoly& o) const { return !(*this == o); }

  // Support points in (z, lambda) layout, canonical order.
  std::vector<IVec> support() const;
  ParamPoly coeff(const IVec& point) const;
  int lambda_degree() const;

  // Terms minimising w.a, w in (z, lambda) layout.
  LaurentPoly facial(const IVec& w) const;
  LaurentPoly substitute_power(const std::vector<long>& Q) const;
  LaurentPoly specialize_lambda(const mpq_class& lambda0) const;
  LaurentPoly substitute_params(const std::map<std::string, ParamPoly>& values) const;
  // Multiplication by the monomial z^by (by in (z, lambda) layout).
  LaurentPoly shift(const IVec& by) const;

  std::optional<LaurentPoly> exact_divide(const LaurentPoly& g) const;

  std::complex<double> eval(const std::vector<std::complex<double>>& z, std::complex<double> lambda,
                            const std::map<std::string, mpq_class>& params) const;

  bool is_monomial() const { return terms_.size() == 1; }
  LaurentPoly normalize_monomial_unit() const;

  std::set<std::string> symbols() const;
  bool mentions_any(const std::set<std::string>& names) const;
  bool is_numeric() const;

  std::string to_string() const;
  nlohmann::json to_json() const;
  static LaurentPoly from_json(const nlohmann::json& j);

  static IVec point_of(const Exponent& e, int d);
  static Exponent exponent_of(const IVec& p);

 private:
  int d_ = 0;
  std::vector<Term> terms_;  // ascending canonical order, no zero coefficients
  static LaurentPoly from_unsorted(int d, std::vector<Term> terms);
  friend class LaurentBuilder;
};

// Accumulates terms in arbitrary order; finish() sorts and merges.
class LaurentBuilder {
 public:
  explicit LaurentBuilder(int d) : d_(d) {}
  void add(const Exponent& e, const ParamPoly& c) { terms_.push_back({e, c}); }
  LaurentPoly finish();

 private:
  int d_;
  std::vector<LaurentPoly::Term> terms_;
};

// Dense evaluator with parameters already bound.
class NumericPoly {
 public:
  NumericPoly(const LaurentPoly& f, const std::map<std::string, mpq_class>& params);
  std::complex<double> operator()(const std::vector<std::complex<double>>& z,
                                  std::complex<double> lambda) const;

 private:
  int d_;
  std::vector<std::pair<Exponent, double>> terms_;
};

struct LaurentMatrix {
  int d = 0;
  std::size_t n = 0;
  std::vector<LaurentPoly> entries;  // row-major
  std::vector<std::string> labels;

  LaurentMatrix() = default;
  LaurentMatrix(int d, std::size_t n);
  LaurentPoly& at(std::size_t i, std::size_t j) { return entries[i * n + j]; }
  const LaurentPoly& at(std::size_t i, std::size_t j) const { return entries[i * n + j]; }
};

inline constexpr std::size_t kDefaultDetCap = 16;
inline constexpr std::size_t kHardDetCap = 64;

class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

LaurentPoly determinant(const LaurentMatrix& m, std::size_t cap = kDefaultDetCap);

}  // namespace bloch
