#include "bloch/param_poly.hpp"

#include <algorithm>
#include <deque>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace bloch {

namespace {

struct SymbolTable {
  std::mutex mu;
  std::unordered_map<std::string, std::uint32_t> ids;
  std::deque<std::string> names;
};

SymbolTable& table() {
  static SymbolTable t;
  return t;
}

PMono mono_mul(const PMono& a, const PMono& b) {
  PMono out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.push_back(b[j++]);
    } else {
      out.emplace_back(a[i].first, a[i].second + b[j].second);
      ++i;
      ++j;
    }
  }
  return out;
}

std::uint32_t degree(const PMono& m) {
  std::uint32_t d = 0;
  for (const auto& [s, e] : m) d += e;
  return d;
}

// Graded order used by division: degree first, then larger exponent on the
// smaller symbol id wins.
bool grlex_less(const PMono& a, const PMono& b) {
  auto da = degree(a), db = degree(b);
  if (da != db) return da < db;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i].first != b[j].first) return a[i].first > b[j].first;
    if (a[i].second != b[j].second) return a[i].second < b[j].second;
    ++i;
    ++j;
  }
  return i == a.size() && j < b.size();
}

std::optional<PMono> mono_div(const PMono& a, const PMono& b) {
  PMono out;
  std::size_t i = 0;
  for (const auto& [s, e] : b) {
    while (i < a.size() && a[i].first < s) out.push_back(a[i++]);
    if (i == a.size() || a[i].first != s || a[i].second < e) return std::nullopt;
    if (a[i].second > e) out.emplace_back(s, a[i].second - e);
    ++i;
  }
  while (i < a.size()) out.push_back(a[i++]);
  return out;
}

}  // namespace

std::uint32_t Symbols::intern(const std::string& name) {
  auto& t = table();
  std::lock_guard<std::mutex> lock(t.mu);
  auto it = t.ids.find(name);
  if (it != t.ids.end()) return it->second;
  auto id = static_cast<std::uint32_t>(t.names.size());
  t.names.push_back(name);
  t.ids.emplace(name, id);
  return id;
}

const std::string& Symbols::name(std::uint32_t id) {
  auto& t = table();
  std::lock_guard<std::mutex> lock(t.mu);
  return t.names.at(id);
}

mpq_class parse_rational(const std::string& s) {
  mpq_class q;
  if (s.empty() || q.set_str(s, 10) != 0)
    throw std::invalid_argument("not a rational: '" + s + "'");
  q.canonicalize();
  return q;
}

std::string rational_string(const mpq_class& q) { return q.get_str(); }

ParamPoly::ParamPoly(const mpq_class& c) {
  if (c != 0) terms_.push_back({{}, c});
  if (!terms_.empty()) terms_.back().coeff.canonicalize();
}

ParamPoly ParamPoly::symbol(const std::string& name) {
  ParamPoly p;
  p.terms_.push_back({{{Symbols::intern(name), 1}}, mpq_class(1)});
  return p;
}

ParamPoly ParamPoly::parse_atom(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty label");
  char c = s[0];
  if ((c >= '0' && c <= '9') || c == '-' || c == '+') return ParamPoly(parse_rational(s));
  for (char ch : s)
    if (!(std::isalnum(static_cast<unsigned char>(ch)) || ch == '_' || ch == '[' || ch == ']' ||
          ch == ','))
      throw std::invalid_argument("bad symbol name: '" + s + "'");
  return symbol(s);
}

bool ParamPoly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.empty());
}

mpq_class ParamPoly::constant_value() const {
  if (!terms_.empty() && terms_[0].mono.empty()) return terms_[0].coeff;
  return 0;
}

std::set<std::string> ParamPoly::symbols() const {
  std::set<std::string> out;
  for (const auto& t : terms_)
    for (const auto& [s, e] : t.mono) out.insert(Symbols::name(s));
  return out;
}

bool ParamPoly::mentions_any(const std::set<std::string>& names) const {
  for (const auto& t : terms_)
    for (const auto& [s, e] : t.mono)
      if (names.count(Symbols::name(s))) return true;
  return false;
}

void ParamPoly::normalize() {
  std::sort(terms_.begin(), terms_.end(),
            [](const Term& a, const Term& b) { return a.mono < b.mono; });
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (auto& t : terms_) {
    if (!out.empty() && out.back().mono == t.mono)
      out.back().coeff += t.coeff;
    else
      out.push_back(std::move(t));
  }
  out.erase(std::remove_if(out.begin(), out.end(), [](const Term& t) { return t.coeff == 0; }),
            out.end());
  terms_ = std::move(out);
}

ParamPoly& ParamPoly::operator+=(const ParamPoly& o) {
  if (o.terms_.empty()) return *this;
  std::vector<Term> out;
  out.reserve(terms_.size() + o.terms_.size());
  std::size_t i = 0, j = 0;
  while (i < terms_.size() || j < o.terms_.size()) {
    if (j == o.terms_.size() || (i < terms_.size() && terms_[i].mono < o.terms_[j].mono)) {
      out.push_back(std::move(terms_[i++]));
    } else if (i == terms_.size() || o.terms_[j].mono < terms_[i].mono) {
      out.push_back(o.terms_[j++]);
    } else {
      mpq_class c = terms_[i].coeff + o.terms_[j].coeff;
      if (c != 0) out.push_back({std::move(terms_[i].mono), c});
      ++i;
      ++j;
    }
  }
  terms_ = std::move(out);
  return *this;
}

ParamPoly ParamPoly::operator-() const {
  ParamPoly r = *this;
  for (auto& t : r.terms_) t.coeff = -t.coeff;
  return r;
}

ParamPoly& ParamPoly::operator-=(const ParamPoly& o) { return *this += -o; }

ParamPoly operator*(const ParamPoly& a, const ParamPoly& b) {
  ParamPoly r;
  if (a.terms_.empty() || b.terms_.empty()) return r;
  if (a.terms_.size() == 1 && a.terms_[0].mono.empty()) {
    r.terms_ = b.terms_;
    for (auto& t : r.terms_) t.coeff *= a.terms_[0].coeff;
    return r;
  }
  if (b.terms_.size() == 1 && b.terms_[0].mono.empty()) {
    r.terms_ = a.terms_;
    for (auto& t : r.terms_) t.coeff *= b.terms_[0].coeff;
    return r;
  }
  r.terms_.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& x : a.terms_)
    for (const auto& y : b.terms_) r.terms_.push_back({mono_mul(x.mono, y.mono), x.coeff * y.coeff});
  r.normalize();
  return r;
}

ParamPoly& ParamPoly::operator*=(const ParamPoly& o) { return *this = *this * o; }

bool ParamPoly::operator==(const ParamPoly& o) const {
  if (terms_.size() != o.terms_.size()) return false;
  for (std::size_t i = 0; i < terms_.size(); ++i)
    if (terms_[i].mono != o.terms_[i].mono || terms_[i].coeff != o.terms_[i].coeff) return false;
  return true;
}

std::optional<ParamPoly> ParamPoly::divide_exact(const ParamPoly& o) const {
  if (o.is_zero()) throw std::invalid_argument("division by zero parameter polynomial");
  if (o.is_constant()) {
    ParamPoly r = *this;
    mpq_class c = o.constant_value();
    for (auto& t : r.terms_) t.coeff /= c;
    return r;
  }
  auto lead = [](const ParamPoly& p) {
    return *std::max_element(p.terms_.begin(), p.terms_.end(),
                             [](const Term& a, const Term& b) { return grlex_less(a.mono, b.mono); });
  };
  Term lo = lead(o);
  ParamPoly rem = *this, quo;
  while (!rem.is_zero()) {
    Term lr = lead(rem);
    auto m = mono_div(lr.mono, lo.mono);
    if (!m) return std::nullopt;
    ParamPoly step;
    step.terms_.push_back({*m, lr.coeff / lo.coeff});
    quo += step;
    rem -= step * o;
  }
  return quo;
}

ParamPoly ParamPoly::substitute(const std::map<std::string, ParamPoly>& values) const {
  ParamPoly out;
  for (const auto& t : terms_) {
    ParamPoly acc(t.coeff);
    PMono keep;
    for (const auto& [s, e] : t.mono) {
      auto it = values.find(Symbols::name(s));
      if (it == values.end()) {
        keep.emplace_back(s, e);
        continue;
      }
      for (std::uint32_t k = 0; k < e; ++k) acc *= it->second;
    }
    if (!keep.empty()) {
      ParamPoly m;
      m.terms_.push_back({keep, mpq_class(1)});
      acc *= m;
    }
    out += acc;
  }
  return out;
}

mpq_class ParamPoly::evaluate(const std::map<std::string, mpq_class>& values) const {
  mpq_class total = 0;
  for (const auto& t : terms_) {
    mpq_class v = t.coeff;
    for (const auto& [s, e] : t.mono) {
      auto it = values.find(Symbols::name(s));
      if (it == values.end()) throw std::invalid_argument("unbound parameter " + Symbols::name(s));
      for (std::uint32_t k = 0; k < e; ++k) v *= it->second;
    }
    total += v;
  }
  return total;
}

std::string ParamPoly::mono_string(const PMono& m) {
  if (m.empty()) return "1";
  std::vector<std::pair<std::string, std::uint32_t>> f;
  for (const auto& [s, e] : m) f.emplace_back(Symbols::name(s), e);
  std::sort(f.begin(), f.end());
  std::string out;
  for (const auto& [n, e] : f) {
    if (!out.empty()) out += "*";
    out += n;
    if (e > 1) out += "^" + std::to_string(e);
  }
  return out;
}

PMono ParamPoly::parse_mono(const std::string& s) {
  PMono m;
  if (s == "1") return m;
  std::stringstream ss(s);
  std::string f;
  while (std::getline(ss, f, '*')) {
    std::uint32_t e = 1;
    auto caret = f.find('^');
    std::string n = f;
    if (caret != std::string::npos) {
      n = f.substr(0, caret);
      e = static_cast<std::uint32_t>(std::stoul(f.substr(caret + 1)));
    }
    m.emplace_back(Symbols::intern(n), e);
  }
  std::sort(m.begin(), m.end());
  PMono merged;
  for (const auto& x : m) {
    if (!merged.empty() && merged.back().first == x.first)
      merged.back().second += x.second;
    else
      merged.push_back(x);
  }
  return merged;
}

std::vector<std::pair<std::string, mpq_class>> ParamPoly::named_terms() const {
  std::vector<std::tuple<std::uint32_t, std::string, mpq_class>> rows;
  for (const auto& t : terms_) rows.emplace_back(degree(t.mono), mono_string(t.mono), t.coeff);
  std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
    if (std::get<0>(a) != std::get<0>(b)) return std::get<0>(a) > std::get<0>(b);
    return std::get<1>(a) < std::get<1>(b);
  });
  std::vector<std::pair<std::string, mpq_class>> out;
  for (auto& r : rows) out.emplace_back(std::get<1>(r), std::get<2>(r));
  return out;
}

std::string ParamPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : named_terms()) {
    mpq_class a = abs(c);
    if (first) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    first = false;
    if (m == "1") {
      out += a.get_str();
    } else {
      if (a != 1) out += a.get_str() + "*";
      out += m;
    }
  }
  return out;
}

}  // namespace bloch
