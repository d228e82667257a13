#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "bloch/criteria.hpp"

namespace bloch {

namespace {

std::string vec_str(const std::vector<long>& v) {
  std::ostringstream o;
  o << "(";
  for (std::size_t i = 0; i < v.size(); ++i) o << (i ? "," : "") << v[i];
  o << ")";
  return o.str();
}

std::set<std::string> label_symbols(const PeriodicGraph& g) {
  std::set<std::string> s;
  for (const auto& e : g.edges())
    if (e.label)
      for (const auto& x : e.label->symbols()) s.insert(x);
  return s;
}

bool all_numeric(const PeriodicGraph& g) {
  if (!g.labels_numeric()) return false;
  for (const auto& p : g.potential())
    if (!p || !p->is_constant()) return false;
  return true;
}

}  // namespace

Context::Context(AnalysisInput in) : in_(std::move(in)) {
  const auto& g = in_.base;
  g.require_valid();
  if (static_cast<int>(in_.Q.size()) != g.d()) throw std::invalid_argument("Q must have d entries");
  order_ = order_of(in_.Q);
  if (g.size() > in_.options.cap) throw CapExceeded("base graph exceeds the determinant size cap");
  qe_ = q_expand(g, in_.Q, in_.potential_Q);
  qe_.expanded.require_valid();
  zd_ = qe_.potential_zd_periodic();
  if (zd_) {
    base_graph_ = qe_.base_with_periodic_potential();
  } else {
    base_graph_ = g.with_potential(std::vector<ParamPoly>(g.size(), ParamPoly()));
  }
  base_poly_ = base_graph_.dispersion(in_.options.cap);
  if (in_.lambda0) base_poly_ = base_poly_.specialize_lambda(*in_.lambda0);
  if (base_poly_.is_zero()) throw std::invalid_argument("dispersion polynomial vanishes identically");
  base_P_ = Polytope::newton(base_poly_);
  LQ_ = qe_.expanded.floquet_matrix_no_lambda();

  const std::size_t n = qe_.expanded.size();
  if (!all_numeric(qe_.expanded)) {
    exact_note_ = "exact D_Q skipped: symbolic coefficients";
  } else if (n > in_.options.cap) {
    exact_note_ = "exact D_Q skipped: size " + std::to_string(n) + " exceeds cap " + std::to_string(in_.options.cap);
  } else {
    LaurentPoly dq = qe_.dispersion(in_.options.cap);
    if (in_.lambda0) dq = dq.specialize_lambda(*in_.lambda0);
    exact_ = dq;
    exact_note_ = "exact D_Q computed (" + std::to_string(dq.size()) + " terms)";
  }

  auto labels = label_symbols(g);
  for (const auto& t : base_poly_.terms()) {
    const auto& c = t.c;
    if (c.is_constant()) continue;
    bool safe = c.size() == 1;
    for (const auto& s : c.symbols())
      if (!labels.count(s)) safe = false;
    if (safe) continue;
    LaurentPoly mono = LaurentPoly::monomial(d(), std::vector<int>(t.e.begin() + 1, t.e.begin() + 1 + d()), t.e[0],
                                             ParamPoly(1));
    assumptions_.push_back("coefficient " + c.to_string() + " of " + mono.to_string() + " in " +
                           describe({base_variant(), ones(), {}}) + " is nonzero");
  }
}

bool Context::periodic_under(Variant v, const std::vector<long>& A) const {
  if (A.size() != in_.Q.size()) return false;
  for (std::size_t i = 0; i < A.size(); ++i)
    if (A[i] <= 0 || in_.Q[i] % A[i] != 0) return false;
  if (v == Variant::Reference) return true;
  const auto ks = cells(in_.Q);
  const std::size_t m = in_.base.size();
  std::map<IVec, std::size_t> index;
  for (std::size_t c = 0; c < ks.size(); ++c) index[ks[c]] = c;
  const auto& pot = qe_.expanded.potential();
  for (std::size_t c = 0; c < ks.size(); ++c) {
    IVec k = ks[c];
    for (std::size_t i = 0; i < k.size(); ++i) k[i] %= A[i];
    std::size_t c0 = index.at(k);
    for (std::size_t r = 0; r < m; ++r)
      if (*pot[c * m + r] != *pot[c0 * m + r]) return false;
  }
  return true;
}

std::set<std::string> Context::potential_symbols(Variant v) const {
  if (v == Variant::Reference) return {};
  return qe_.expanded.potential_symbols();
}

std::vector<IVec> Context::base_facets() const {
  std::vector<IVec> out;
  for (const auto& f : base_P_.facet_records()) out.push_back(f.normal);
  return out;
}

long Context::facet_offset(const IVec& w) const {
  for (const auto& f : base_P_.facet_records())
    if (f.normal == w) return f.offset;
  throw std::invalid_argument("not a facet normal of the base Newton polytope");
}

std::optional<Face> Context::base_face(const IVec& w) const {
  for (const auto& f : base_P_.facets())
    if (f.normal == w) return f;
  return std::nullopt;
}

LaurentPoly Context::base_face_poly(const IVec& w) const {
  return w.empty() ? base_poly_ : base_poly_.facial(w);
}

bool Context::subject_valid(const Subject& s) const {
  if (s.S.size() != in_.Q.size()) return false;
  for (std::size_t i = 0; i < s.S.size(); ++i)
    if (s.S[i] <= 0 || in_.Q[i] % s.S[i] != 0) return false;
  if (!s.face.empty() && !base_face(s.face)) return false;
  if (s.variant == Variant::Reference) return !zd_;
  return s.S == in_.Q || periodic_under(Variant::Actual, s.S);
}

std::optional<LaurentPoly> Context::poly_of(const Subject& s) const {
  if (!subject_valid(s)) return std::nullopt;
  if (s.S == ones() && s.variant == base_variant()) return base_face_poly(s.face);
  if (s.variant == Variant::Actual && s.S == in_.Q && exact_) {
    if (s.face.empty()) return *exact_;
    return exact_->facial(exposing_vector_map(s.face, in_.Q));
  }
  return std::nullopt;
}

const WeightBound& Context::facet_bound(const IVec& w) const {
  auto it = bounds_.find(w);
  if (it != bounds_.end()) return it->second;
  auto b = weight_bound(LQ_, exposing_vector_map(w, in_.Q), !fermi());
  return bounds_.emplace(w, b).first->second;
}

std::string Context::describe(const Subject& s) const {
  std::ostringstream o;
  bool top = s.S == in_.Q && s.S != ones();
  o << (s.S == ones() ? "D" : top ? "D_Q" : "D_S");
  o << "[" << in_.base.name();
  if (top)
    o << ",Q=" << vec_str(s.S);
  else if (s.S != ones())
    o << ",S=" << vec_str(s.S);
  if (s.variant == Variant::Reference) o << ",reference";
  if (!s.face.empty()) o << ",face=" << vec_str(s.face);
  if (in_.lambda0) o << ",l0=" << rational_string(*in_.lambda0);
  o << "]";
  return o.str();
}

bool potential_independent(const LaurentPoly& face_poly, const std::set<std::string>& potential_symbols) {
  return !face_poly.mentions_any(potential_symbols);
}

}  // namespace bloch
