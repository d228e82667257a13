#include "bloch/univariate.hpp"

#include <algorithm>
#include <stdexcept>

namespace bloch {

UPoly::UPoly(std::vector<mpq_class> c) : c_(std::move(c)) { trim(); }

void UPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

UPoly UPoly::linear_root(const mpq_class& r) { return UPoly({-r, mpq_class(1)}); }

UPoly UPoly::operator*(const UPoly& o) const {
  if (is_zero() || o.is_zero()) return {};
  std::vector<mpq_class> r(c_.size() + o.c_.size() - 1, 0);
  for (std::size_t i = 0; i < c_.size(); ++i)
    for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
  return UPoly(r);
}

UPoly UPoly::operator-(const UPoly& o) const {
  std::vector<mpq_class> r(std::max(c_.size(), o.c_.size()), 0);
  for (std::size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
  for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] -= o.c_[i];
  return UPoly(r);
}

UPoly UPoly::derivative() const {
  std::vector<mpq_class> r;
  for (std::size_t i = 1; i < c_.size(); ++i) r.push_back(c_[i] * static_cast<long>(i));
  return UPoly(r);
}

UPoly UPoly::monic() const {
  if (is_zero()) return {};
  UPoly r = *this;
  mpq_class l = lead();
  for (auto& x : r.c_) x /= l;
  return r;
}

mpq_class UPoly::operator()(const mpq_class& x) const {
  mpq_class v = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) v = v * x + *it;
  return v;
}

std::pair<UPoly, UPoly> UPoly::divmod(const UPoly& g) const {
  if (g.is_zero()) throw std::invalid_argument("polynomial division by zero");
  std::vector<mpq_class> r = c_;
  if (r.size() < g.c_.size()) return {UPoly(), *this};
  std::vector<mpq_class> q(r.size() - g.c_.size() + 1, 0);
  for (std::size_t k = q.size(); k-- > 0;) {
    mpq_class f = r[k + g.c_.size() - 1] / g.lead();
    q[k] = f;
    if (f == 0) continue;
    for (std::size_t j = 0; j < g.c_.size(); ++j) r[k + j] -= f * g.c_[j];
  }
  return {UPoly(q), UPoly(r)};
}

std::string UPoly::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::string out;
  for (std::size_t k = c_.size(); k-- > 0;) {
    if (c_[k] == 0) continue;
    mpq_class a = abs(c_[k]);
    out += out.empty() ? (c_[k] < 0 ? "-" : "") : (c_[k] < 0 ? " - " : " + ");
    std::string m = k == 0 ? "" : (k == 1 ? var : var + "^" + std::to_string(k));
    if (m.empty())
      out += a.get_str();
    else if (a == 1)
      out += m;
    else
      out += a.get_str() + "*" + m;
  }
  return out;
}

UPoly gcd(UPoly a, UPoly b) {
  while (!b.is_zero()) {
    auto r = a.divmod(b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

std::vector<UPoly> sturm_sequence(const UPoly& f) {
  std::vector<UPoly> s{f, f.derivative()};
  while (!s.back().is_zero()) {
    auto r = s[s.size() - 2].divmod(s.back()).second;
    if (r.is_zero()) break;
    std::vector<mpq_class> neg;
    for (const auto& c : r.coeffs()) neg.push_back(-c);
    s.push_back(UPoly(neg));
  }
  return s;
}

namespace {

int sign_changes(const std::vector<UPoly>& seq, const mpq_class& x) {
  int changes = 0, last = 0;
  for (const auto& p : seq) {
    int s = sgn(p(x));
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

}  // namespace

int sturm_count(const std::vector<UPoly>& seq, const mpq_class& a, const mpq_class& b) {
  return sign_changes(seq, a) - sign_changes(seq, b);
}

std::vector<std::pair<mpq_class, int>> rational_roots(const UPoly& f_in) {
  std::vector<std::pair<mpq_class, int>> out;
  if (f_in.degree() < 1) return out;
  // Square-free part, made integral and primitive.
  UPoly g = f_in.divmod(gcd(f_in, f_in.derivative())).first;
  mpz_class den = 1;
  for (const auto& c : g.coeffs()) den = lcm(den, mpz_class(c.get_den()));
  std::vector<mpq_class> ic;
  for (const auto& c : g.coeffs()) ic.push_back(c * den);
  g = UPoly(ic);
  mpz_class an = abs(mpz_class(g.lead()));
  auto seq = sturm_sequence(g);
  // Cauchy bound.
  mpq_class bound = 1;
  for (const auto& c : g.coeffs()) bound = std::max(bound, mpq_class(abs(c) / abs(g.lead())));
  bound += 1;
  // Two rationals with denominator dividing a_n differ by at least 1/a_n.
  mpq_class width(1, 2);
  width /= mpq_class(an);
  std::vector<std::pair<mpq_class, mpq_class>> stack{{-bound, bound}};
  std::vector<mpq_class> found;
  while (!stack.empty()) {
    auto [a, b] = stack.back();
    stack.pop_back();
    int n = sturm_count(seq, a, b);
    if (n == 0) continue;
    if (b - a < width) {
      mpq_class mid = (a + b) / 2;
      mpz_class num;
      mpq_class scaled = mid * mpq_class(an);
      mpz_class fl = scaled.get_num() / scaled.get_den();
      mpq_class rem = scaled - mpq_class(fl);
      num = rem * 2 >= 1 ? mpz_class(fl + 1) : fl;
      for (mpz_class k : {mpz_class(num - 1), num, mpz_class(num + 1)}) {
        mpq_class cand(k, an);
        cand.canonicalize();
        if (g(cand) == 0 && cand > a && cand <= b) found.push_back(cand);
      }
      continue;
    }
    mpq_class mid = (a + b) / 2;
    stack.emplace_back(a, mid);
    stack.emplace_back(mid, b);
  }
  std::sort(found.begin(), found.end());
  found.erase(std::unique(found.begin(), found.end()), found.end());
  for (const auto& r : found) {
    int m = 0;
    UPoly h = f_in;
    while (true) {
      auto [q, rem] = h.divmod(UPoly::linear_root(r));
      if (!rem.is_zero()) break;
      ++m;
      h = q;
    }
    out.emplace_back(r, m);
  }
  return out;
}

}  // namespace bloch
