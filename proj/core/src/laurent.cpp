#include "bloch/laurent.hpp"

#include <algorithm>
#include <stdexcept>

namespace bloch {

namespace {

void check_same(int a, int b) {
  if (a != b) throw std::invalid_argument("Laurent polynomials in different numbers of variables");
}

Exponent add_exp(const Exponent& a, const Exponent& b) {
  Exponent r;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

Exponent sub_exp(const Exponent& a, const Exponent& b) {
  Exponent r;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

std::complex<double> ipow(std::complex<double> x, int k) {
  if (k < 0) {
    x = 1.0 / x;
    k = -k;
  }
  std::complex<double> r = 1.0;
  while (k) {
    if (k & 1) r *= x;
    x *= x;
    k >>= 1;
  }
  return r;
}

std::string exp_string(const Exponent& e, int d) {
  std::string out;
  auto put = [&](const std::string& v, int k) {
    if (k == 0) return;
    if (!out.empty()) out += "*";
    out += v;
    if (k != 1) out += "^" + std::to_string(k);
  };
  for (int i = 1; i <= d; ++i) put("z" + std::to_string(i), e[i]);
  put("l", e[0]);
  return out;
}

}  // namespace

LaurentPoly::LaurentPoly(int d) : d_(d) {
  if (d < 0 || d > kMaxZVars) throw std::invalid_argument("unsupported number of z variables");
}

LaurentPoly LaurentPoly::constant(int d, const ParamPoly& c) {
  LaurentPoly p(d);
  if (!c.is_zero()) p.terms_.push_back({Exponent{}, c});
  return p;
}

LaurentPoly LaurentPoly::monomial(int d, const std::vector<int>& zexp, int l, const ParamPoly& c) {
  LaurentPoly p(d);
  if (static_cast<int>(zexp.size()) != d) throw std::invalid_argument("exponent length mismatch");
  if (l < 0) throw std::invalid_argument("negative lambda exponent");
  if (c.is_zero()) return p;
  Exponent e{};
  e[0] = l;
  for (int i = 0; i < d; ++i) e[i + 1] = zexp[i];
  p.terms_.push_back({e, c});
  return p;
}

LaurentPoly LaurentPoly::z(int d, int i, int power) {
  std::vector<int> e(d, 0);
  e.at(i - 1) = power;
  return monomial(d, e, 0, ParamPoly(1));
}

LaurentPoly LaurentPoly::lambda(int d) { return monomial(d, std::vector<int>(d, 0), 1, ParamPoly(1)); }

LaurentPoly LaurentPoly::from_unsorted(int d, std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.e < b.e; });
  LaurentPoly p(d);
  p.terms_.reserve(terms.size());
  for (auto& t : terms) {
    if (!p.terms_.empty() && p.terms_.back().e == t.e)
      p.terms_.back().c += t.c;
    else
      p.terms_.push_back(std::move(t));
  }
  p.terms_.erase(std::remove_if(p.terms_.begin(), p.terms_.end(),
                                [](const Term& t) { return t.c.is_zero(); }),
                 p.terms_.end());
  return p;
}

LaurentPoly LaurentBuilder::finish() { return LaurentPoly::from_unsorted(d_, std::move(terms_)); }

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
  check_same(d_, o.d_);
  if (o.terms_.empty()) return *this;
  std::vector<Term> out;
  out.reserve(terms_.size() + o.terms_.size());
  std::size_t i = 0, j = 0;
  while (i < terms_.size() || j < o.terms_.size()) {
    if (j == o.terms_.size() || (i < terms_.size() && terms_[i].e < o.terms_[j].e)) {
      out.push_back(std::move(terms_[i++]));
    } else if (i == terms_.size() || o.terms_[j].e < terms_[i].e) {
      out.push_back(o.terms_[j++]);
    } else {
      terms_[i].c += o.terms_[j].c;
      if (!terms_[i].c.is_zero()) out.push_back(std::move(terms_[i]));
      ++i;
      ++j;
    }
  }
  terms_ = std::move(out);
  return *this;
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly r = *this;
  for (auto& t : r.terms_) t.c = -t.c;
  return r;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) { return *this += -o; }

LaurentPoly LaurentPoly::scaled(const ParamPoly& c) const {
  if (c.is_zero()) return LaurentPoly(d_);
  LaurentPoly r = *this;
  for (auto& t : r.terms_) t.c *= c;
  if (!c.is_constant()) r = from_unsorted(d_, std::move(r.terms_));
  return r;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  check_same(a.d_, b.d_);
  if (a.terms_.empty() || b.terms_.empty()) return LaurentPoly(a.d_);
  std::vector<LaurentPoly::Term> prod;
  prod.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& x : a.terms_)
    for (const auto& y : b.terms_) prod.push_back({add_exp(x.e, y.e), x.c * y.c});
  return LaurentPoly::from_unsorted(a.d_, std::move(prod));
}

bool LaurentPoly::operator==(const LaurentPoly& o) const {
  if (d_ != o.d_ || terms_.size() != o.terms_.size()) return false;
  for (std::size_t i = 0; i < terms_.size(); ++i)
    if (terms_[i].e != o.terms_[i].e || terms_[i].c != o.terms_[i].c) return false;
  return true;
}

IVec LaurentPoly::point_of(const Exponent& e, int d) {
  IVec p(d + 1);
  for (int i = 0; i < d; ++i) p[i] = e[i + 1];
  p[d] = e[0];
  return p;
}

Exponent LaurentPoly::exponent_of(const IVec& p) {
  Exponent e{};
  int d = static_cast<int>(p.size()) - 1;
  if (d < 0 || d > kMaxZVars) throw std::invalid_argument("bad point length");
  for (int i = 0; i < d; ++i) e[i + 1] = static_cast<std::int32_t>(p[i]);
  e[0] = static_cast<std::int32_t>(p[d]);
  return e;
}

std::vector<IVec> LaurentPoly::support() const {
  std::vector<IVec> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) out.push_back(point_of(t.e, d_));
  return out;
}

ParamPoly LaurentPoly::coeff(const IVec& point) const {
  Exponent e = exponent_of(point);
  auto it = std::lower_bound(terms_.begin(), terms_.end(), e,
                             [](const Term& t, const Exponent& x) { return t.e < x; });
  if (it != terms_.end() && it->e == e) return it->c;
  return ParamPoly();
}

int LaurentPoly::lambda_degree() const {
  if (terms_.empty()) return -1;
  return terms_.back().e[0];
}

LaurentPoly LaurentPoly::facial(const IVec& w) const {
  if (terms_.empty()) throw std::invalid_argument("facial polynomial of zero");
  if (static_cast<int>(w.size()) != d_ + 1) throw std::invalid_argument("exposing vector length");
  auto dot = [&](const Exponent& e) {
    long s = w[d_] * e[0];
    for (int i = 0; i < d_; ++i) s += w[i] * e[i + 1];
    return s;
  };
  long best = dot(terms_[0].e);
  for (const auto& t : terms_) best = std::min(best, dot(t.e));
  LaurentPoly r(d_);
  for (const auto& t : terms_)
    if (dot(t.e) == best) r.terms_.push_back(t);
  return r;
}

LaurentPoly LaurentPoly::substitute_power(const std::vector<long>& Q) const {
  if (static_cast<int>(Q.size()) != d_) throw std::invalid_argument("Q length mismatch");
  LaurentPoly r = *this;
  for (auto& t : r.terms_)
    for (int i = 0; i < d_; ++i) t.e[i + 1] = static_cast<std::int32_t>(t.e[i + 1] * Q[i]);
  // Positive scaling preserves the lexicographic order.
  return r;
}

LaurentPoly LaurentPoly::specialize_lambda(const mpq_class& lambda0) const {
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) {
    mpq_class f = 1;
    for (int k = 0; k < t.e[0]; ++k) f *= lambda0;
    if (f == 0) continue;
    Exponent e = t.e;
    e[0] = 0;
    out.push_back({e, t.c * ParamPoly(f)});
  }
  return from_unsorted(d_, std::move(out));
}

LaurentPoly LaurentPoly::substitute_params(const std::map<std::string, ParamPoly>& values) const {
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) out.push_back({t.e, t.c.substitute(values)});
  return from_unsorted(d_, std::move(out));
}

LaurentPoly LaurentPoly::shift(const IVec& by) const {
  Exponent s = exponent_of(by);
  LaurentPoly r = *this;
  for (auto& t : r.terms_) {
    t.e = add_exp(t.e, s);
    if (t.e[0] < 0) throw std::invalid_argument("shift makes a lambda exponent negative");
  }
  return r;
}

std::optional<LaurentPoly> LaurentPoly::exact_divide(const LaurentPoly& g) const {
  check_same(d_, g.d_);
  if (g.is_zero()) throw std::invalid_argument("division by zero polynomial");
  if (is_zero()) return LaurentPoly(d_);
  const int nv = d_ + 1;
  Exponent lo_f = terms_[0].e, hi_f = terms_[0].e, lo_g = g.terms_[0].e, hi_g = g.terms_[0].e;
  for (const auto& t : terms_)
    for (int i = 0; i < nv; ++i) {
      lo_f[i] = std::min(lo_f[i], t.e[i]);
      hi_f[i] = std::max(hi_f[i], t.e[i]);
    }
  for (const auto& t : g.terms_)
    for (int i = 0; i < nv; ++i) {
      lo_g[i] = std::min(lo_g[i], t.e[i]);
      hi_g[i] = std::max(hi_g[i], t.e[i]);
    }
  // Coordinatewise extremes add under multiplication, so the quotient lives in this box.
  Exponent lo_q = sub_exp(lo_f, lo_g), hi_q = sub_exp(hi_f, hi_g);
  for (int i = 0; i < nv; ++i)
    if (lo_q[i] > hi_q[i]) return std::nullopt;
  if (lo_q[0] < 0) return std::nullopt;

  std::map<Exponent, ParamPoly> rem;
  for (const auto& t : terms_) rem.emplace(t.e, t.c);
  const Term& lead_g = g.terms_.back();
  std::vector<Term> quo;
  while (!rem.empty()) {
    auto top = std::prev(rem.end());
    Exponent qe = sub_exp(top->first, lead_g.e);
    for (int i = 0; i < nv; ++i)
      if (qe[i] < lo_q[i] || qe[i] > hi_q[i]) return std::nullopt;
    auto qc = top->second.divide_exact(lead_g.c);
    if (!qc) return std::nullopt;
    for (const auto& t : g.terms_) {
      Exponent e = add_exp(qe, t.e);
      ParamPoly v = t.c * *qc;
      auto it = rem.find(e);
      if (it == rem.end()) {
        rem.emplace(e, -v);
      } else {
        it->second -= v;
        if (it->second.is_zero()) rem.erase(it);
      }
    }
    quo.push_back({qe, *qc});
  }
  return from_unsorted(d_, std::move(quo));
}

std::complex<double> LaurentPoly::eval(const std::vector<std::complex<double>>& zv,
                                       std::complex<double> lambda,
                                       const std::map<std::string, mpq_class>& params) const {
  return NumericPoly(*this, params)(zv, lambda);
}

LaurentPoly LaurentPoly::normalize_monomial_unit() const {
  if (terms_.empty()) throw std::invalid_argument("normalize of zero polynomial");
  Exponent lo = terms_[0].e;
  LaurentPoly r = *this;
  for (auto& t : r.terms_) t.e = sub_exp(t.e, lo);
  return r;
}

std::set<std::string> LaurentPoly::symbols() const {
  std::set<std::string> out;
  for (const auto& t : terms_) {
    auto s = t.c.symbols();
    out.insert(s.begin(), s.end());
  }
  return out;
}

bool LaurentPoly::mentions_any(const std::set<std::string>& names) const {
  for (const auto& t : terms_)
    if (t.c.mentions_any(names)) return true;
  return false;
}

bool LaurentPoly::is_numeric() const {
  for (const auto& t : terms_)
    if (!t.c.is_constant()) return false;
  return true;
}

std::string LaurentPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    std::string mono = exp_string(it->e, d_);
    bool first = out.empty();
    if (it->c.is_constant()) {
      mpq_class c = it->c.constant_value();
      bool neg = c < 0;
      mpq_class a = abs(c);
      out += first ? (neg ? "-" : "") : (neg ? " - " : " + ");
      if (mono.empty())
        out += a.get_str();
      else if (a == 1)
        out += mono;
      else
        out += a.get_str() + "*" + mono;
      continue;
    }
    std::string cs = it->c.to_string();
    if (it->c.size() == 1) {
      bool neg = cs[0] == '-';
      if (neg) cs = cs.substr(1);
      out += first ? (neg ? "-" : "") : (neg ? " - " : " + ");
    } else {
      cs = "(" + cs + ")";
      if (!first) out += " + ";
    }
    out += mono.empty() ? cs : cs + "*" + mono;
  }
  return out;
}

nlohmann::json LaurentPoly::to_json() const {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& t : terms_) {
    nlohmann::json z = nlohmann::json::array();
    for (int i = 1; i <= d_; ++i) z.push_back(t.e[i]);
    nlohmann::json coeff = nlohmann::json::object();
    for (const auto& [m, c] : t.c.named_terms()) coeff[m] = rational_string(c);
    terms.push_back({{"z", z}, {"l", t.e[0]}, {"coeff", coeff}});
  }
  return {{"vars", d_}, {"terms", terms}};
}

LaurentPoly LaurentPoly::from_json(const nlohmann::json& j) {
  int d = j.at("vars").get<int>();
  LaurentBuilder b(d);
  for (const auto& t : j.at("terms")) {
    Exponent e{};
    auto z = t.at("z").get<std::vector<int>>();
    if (static_cast<int>(z.size()) != d) throw std::invalid_argument("term exponent length");
    for (int i = 0; i < d; ++i) e[i + 1] = z[i];
    e[0] = t.at("l").get<int>();
    if (e[0] < 0) throw std::invalid_argument("negative lambda exponent");
    ParamPoly c;
    for (const auto& [m, v] : t.at("coeff").items()) {
      ParamPoly term(parse_rational(v.get<std::string>()));
      for (const auto& [s, k] : ParamPoly::parse_mono(m))
        for (std::uint32_t r = 0; r < k; ++r) term *= ParamPoly::symbol(Symbols::name(s));
      c += term;
    }
    b.add(e, c);
  }
  return b.finish();
}

NumericPoly::NumericPoly(const LaurentPoly& f, const std::map<std::string, mpq_class>& params)
    : d_(f.vars()) {
  terms_.reserve(f.size());
  for (const auto& t : f.terms()) terms_.emplace_back(t.e, t.c.evaluate(params).get_d());
}

std::complex<double> NumericPoly::operator()(const std::vector<std::complex<double>>& zv,
                                             std::complex<double> lambda) const {
  if (static_cast<int>(zv.size()) != d_) throw std::invalid_argument("point dimension mismatch");
  for (const auto& x : zv)
    if (x == std::complex<double>(0.0)) throw std::invalid_argument("zero Floquet multiplier");
  std::complex<double> s = 0;
  for (const auto& [e, c] : terms_) {
    std::complex<double> v = c * ipow(lambda, e[0]);
    for (int i = 0; i < d_; ++i) v *= ipow(zv[i], e[i + 1]);
    s += v;
  }
  return s;
}

LaurentMatrix::LaurentMatrix(int d_, std::size_t n_)
    : d(d_), n(n_), entries(n_ * n_, LaurentPoly(d_)), labels(n_) {}

}  // namespace bloch
