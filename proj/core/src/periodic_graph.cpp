#include "bloch/periodic_graph.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace bloch {

namespace {

bool lex_negative(const IVec& a) {
  for (long x : a)
    if (x != 0) return x < 0;
  return false;
}

IVec negate(IVec a) {
  for (auto& x : a) x = -x;
  return a;
}

LaurentPoly zpow(int d, const IVec& a, const ParamPoly& c) {
  std::vector<int> e(a.begin(), a.end());
  return LaurentPoly::monomial(d, e, 0, c);
}

}  // namespace

PeriodicGraph::PeriodicGraph(std::string name, int d) : name_(std::move(name)), d_(d) {
  if (d < 1 || d > kMaxZVars) throw std::invalid_argument("rank d must be between 1 and 7");
}

std::size_t PeriodicGraph::add_vertex(const std::string& name, std::optional<ParamPoly> potential) {
  if (index_of(name)) throw std::invalid_argument("duplicate vertex " + name);
  vertices_.push_back(name);
  potential_.push_back(std::move(potential));
  return vertices_.size() - 1;
}

void PeriodicGraph::add_edge(std::size_t u, std::size_t v, IVec offset, std::optional<ParamPoly> label) {
  if (u >= size() || v >= size()) throw std::invalid_argument("edge endpoint out of range");
  if (static_cast<int>(offset.size()) != d_) throw std::invalid_argument("edge offset length");
  if (u > v || (u == v && lex_negative(offset))) {
    std::swap(u, v);
    offset = negate(offset);
  }
  edges_.push_back({u, v, std::move(offset), std::move(label)});
}

void PeriodicGraph::add_edge_named(const std::string& u, const std::string& v, IVec offset,
                             const ParamPoly& label) {
  auto iu = index_of(u), iv = index_of(v);
  if (!iu || !iv) throw std::invalid_argument("unknown vertex in edge " + u + "-" + v);
  add_edge(*iu, *iv, std::move(offset), label);
}

std::optional<std::size_t> PeriodicGraph::index_of(const std::string& v) const {
  auto it = std::find(vertices_.begin(), vertices_.end(), v);
  if (it == vertices_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - vertices_.begin());
}

std::vector<std::string> PeriodicGraph::validate() const {
  std::vector<std::string> diag;
  if (vertices_.empty()) diag.push_back("graph has no vertices");
  std::set<std::tuple<std::size_t, std::size_t, IVec>> seen;
  for (const auto& e : edges_) {
    std::ostringstream id;
    id << vertices_[e.u] << "-" << vertices_[e.v] << " offset [";
    for (std::size_t i = 0; i < e.offset.size(); ++i) id << (i ? "," : "") << e.offset[i];
    id << "]";
    if (e.u == e.v && std::all_of(e.offset.begin(), e.offset.end(), [](long x) { return x == 0; }))
      diag.push_back("self-loop with zero offset: " + id.str());
    if (!seen.insert({e.u, e.v, e.offset}).second) diag.push_back("duplicate edge: " + id.str());
    if (!e.label)
      diag.push_back("unlabeled edge: " + id.str());
    else if (e.label->is_zero())
      diag.push_back("zero edge label: " + id.str());
  }
  for (std::size_t i = 0; i < potential_.size(); ++i)
    if (!potential_[i]) diag.push_back("missing potential at vertex " + vertices_[i]);
  return diag;
}

void PeriodicGraph::require_valid() const {
  auto diag = validate();
  if (diag.empty()) return;
  std::string msg = "invalid graph:";
  for (const auto& s : diag) msg += "\n  " + s;
  throw std::invalid_argument(msg);
}

std::set<std::string> PeriodicGraph::potential_symbols() const {
  std::set<std::string> out;
  for (const auto& p : potential_)
    if (p) {
      auto s = p->symbols();
      out.insert(s.begin(), s.end());
    }
  return out;
}

bool PeriodicGraph::labels_numeric() const {
  for (const auto& e : edges_)
    if (!e.label || !e.label->is_constant()) return false;
  return true;
}

LaurentMatrix PeriodicGraph::floquet_matrix_no_lambda() const {
  require_valid();
  const std::size_t m = size();
  LaurentMatrix L(d_, m);
  L.labels = vertices_;
  IVec zero(d_, 0);
  for (std::size_t i = 0; i < m; ++i) L.at(i, i) = LaurentPoly::constant(d_, *potential_[i]);
  for (const auto& e : edges_) {
    const ParamPoly& E = *e.label;
    if (e.u == e.v) {
      L.at(e.u, e.u) += zpow(d_, zero, E * ParamPoly(2));
      L.at(e.u, e.u) -= zpow(d_, e.offset, E) + zpow(d_, negate(e.offset), E);
    } else {
      L.at(e.u, e.u) += zpow(d_, zero, E);
      L.at(e.v, e.v) += zpow(d_, zero, E);
      L.at(e.u, e.v) -= zpow(d_, e.offset, E);
      L.at(e.v, e.u) -= zpow(d_, negate(e.offset), E);
    }
  }
  return L;
}

LaurentMatrix PeriodicGraph::floquet_matrix() const {
  LaurentMatrix L = floquet_matrix_no_lambda();
  for (std::size_t i = 0; i < L.n; ++i) L.at(i, i) -= LaurentPoly::lambda(d_);
  return L;
}

LaurentPoly PeriodicGraph::dispersion(std::size_t cap) const { return determinant(floquet_matrix(), cap); }

std::set<IVec> PeriodicGraph::offset_set() const {
  std::set<IVec> out;
  for (const auto& e : edges_) {
    out.insert(e.offset);
    out.insert(negate(e.offset));
  }
  return out;
}

PeriodicGraph PeriodicGraph::with_label_values(const std::map<std::string, ParamPoly>& values) const {
  PeriodicGraph g = *this;
  for (auto& e : g.edges_)
    if (e.label) e.label = e.label->substitute(values);
  return g;
}

PeriodicGraph PeriodicGraph::with_potential(const std::vector<ParamPoly>& values) const {
  if (values.size() != size()) throw std::invalid_argument("potential has wrong number of values");
  PeriodicGraph g = *this;
  for (std::size_t i = 0; i < values.size(); ++i) g.potential_[i] = values[i];
  return g;
}

long order_of(const std::vector<long>& Q) {
  long n = 1;
  for (long q : Q) {
    if (q <= 0) throw std::invalid_argument("Q entries must be positive");
    n *= q;
  }
  return n;
}

std::vector<IVec> cells(const std::vector<long>& Q) {
  std::vector<IVec> out;
  long n = order_of(Q);
  const std::size_t d = Q.size();
  for (long idx = 0; idx < n; ++idx) {
    IVec k(d);
    long r = idx;
    for (std::size_t i = d; i-- > 0;) {
      k[i] = r % Q[i];
      r /= Q[i];
    }
    out.push_back(k);
  }
  return out;
}

std::string cell_suffix(const IVec& k) {
  std::string s = "[";
  for (std::size_t i = 0; i < k.size(); ++i) s += (i ? "," : "") + std::to_string(k[i]);
  return s + "]";
}

QExpansion q_expand(const PeriodicGraph& g, const std::vector<long>& Q,
                    const std::vector<ParamPoly>& potential_Q) {
  g.require_valid();
  const int d = g.d();
  if (static_cast<int>(Q.size()) != d) throw std::invalid_argument("Q has the wrong length");
  const auto ks = cells(Q);
  const std::size_t m = g.size();
  if (!potential_Q.empty() && potential_Q.size() != ks.size() * m)
    throw std::invalid_argument("expanded potential is missing vertices");
  auto cell_index = [&](const IVec& k) {
    long idx = 0;
    for (int i = 0; i < d; ++i) idx = idx * Q[i] + k[i];
    return static_cast<std::size_t>(idx);
  };
  std::string qs;
  for (int i = 0; i < d; ++i) qs += (i ? "," : "") + std::to_string(Q[i]);
  PeriodicGraph ex(g.name() + "_Q(" + qs + ")", d);
  for (std::size_t c = 0; c < ks.size(); ++c)
    for (std::size_t r = 0; r < m; ++r) {
      std::size_t idx = c * m + r;
      ex.add_vertex(g.vertices()[r] + cell_suffix(ks[c]),
                    potential_Q.empty() ? g.potential()[r] : std::optional<ParamPoly>(potential_Q[idx]));
    }
  for (const auto& e : g.edges()) {
    for (std::size_t c = 0; c < ks.size(); ++c) {
      IVec kt(d), carry(d);
      for (int i = 0; i < d; ++i) {
        long s = ks[c][i] + e.offset[i];
        long fl = s >= 0 ? s / Q[i] : -((-s + Q[i] - 1) / Q[i]);
        carry[i] = fl;
        kt[i] = s - fl * Q[i];
      }
      ex.add_edge(c * m + e.u, cell_index(kt) * m + e.v, carry, e.label);
    }
  }
  return {g, Q, ex};
}

bool QExpansion::potential_zd_periodic() const {
  const std::size_t m = base.size();
  const auto& pot = expanded.potential();
  for (std::size_t i = 0; i < pot.size(); ++i)
    if (!pot[i] || !pot[i % m] || *pot[i] != *pot[i % m]) return false;
  return true;
}

PeriodicGraph QExpansion::base_with_periodic_potential() const {
  if (!potential_zd_periodic()) throw std::logic_error("potential is not Z^d-periodic");
  std::vector<ParamPoly> v;
  for (std::size_t r = 0; r < base.size(); ++r) v.push_back(*expanded.potential()[r]);
  return base.with_potential(v);
}

}  // namespace bloch
