#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace bloch {

// Interned parameter names. Ids are process-local; anything user-visible is
// ordered by name.
class Symbols {
 public:
  static std::uint32_t intern(const std::string& name);
  static const std::string& name(std::uint32_t id);
};

// Monomial in parameters: (symbol id, exponent) sorted by id, exponents > 0.
using PMono = std::vector<std::pair<std::uint32_t, std::uint32_t>>;

mpq_class parse_rational(const std::string& s);
std::string rational_string(const mpq_class& q);

class ParamPoly {
 public:
  struct Term {
    PMono mono;
    mpq_class coeff;
  };

  ParamPoly() = default;
  ParamPoly(const mpq_class& c);  // NOLINT(google-explicit-constructor)
  ParamPoly(long c) : ParamPoly(mpq_class(c)) {}  // NOLINT
  static ParamPoly symbol(const std::string& name);
  // Either a rational "p/q" or a symbol name.
  static ParamPoly parse_atom(const std::string& s);

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  mpq_class constant_value() const;  // coefficient of the empty monomial
  std::size_t size() const { return terms_.size(); }
  const std::vector<Term>& terms() const { return terms_; }

  std::set<std::string> symbols() const;
  bool mentions_any(const std::set<std::string>& names) const;

  ParamPoly& operator+=(const ParamPoly& o);
  ParamPoly& operator-=(const ParamPoly& o);
  ParamPoly& operator*=(const ParamPoly& o);
  ParamPoly operator-() const;
  friend ParamPoly operator+(ParamPoly a, const ParamPoly& b) { return a += b; }
  friend ParamPoly operator-(ParamPoly a, const ParamPoly& b) { return a -= b; }
  friend ParamPoly operator*(const ParamPoly& a, const ParamPoly& b);
  bool operator==(const ParamPoly& o) const;
  bool operator!=(const ParamPoly& o) const { return !(*this == o); }

  // Exact division; nullopt when o does not divide *this.
  std::optional<ParamPoly> divide_exact(const ParamPoly& o) const;

  // Replaces bound symbols; unbound ones stay symbolic.
  ParamPoly substitute(const std::map<std::string, ParamPoly>& values) const;
  // Throws std::invalid_argument naming the first unbound symbol.
  mpq_class evaluate(const std::map<std::string, mpq_class>& values) const;

  std::string to_string() const;
  // Term list ordered for output: degree descending, then by names.
  std::vector<std::pair<std::string, mpq_class>> named_terms() const;

  static std::string mono_string(const PMono& m);
  static PMono parse_mono(const std::string& s);

 private:
  std::vector<Term> terms_;  // sorted by mono, no zero coefficients
  void normalize();
};

}  // namespace bloch
