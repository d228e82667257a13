#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "bloch/criteria.hpp"
#include "bloch/div.hpp"

namespace bloch {

namespace {

std::string vec_str(const std::vector<long>& v) {
  std::ostringstream o;
  o << "(";
  for (std::size_t i = 0; i < v.size(); ++i) o << (i ? "," : "") << v[i];
  o << ")";
  return o.str();
}

std::string set_str(const std::vector<int>& s) {
  std::ostringstream o;
  o << "{";
  for (std::size_t i = 0; i < s.size(); ++i) o << (i ? "," : "") << s[i];
  o << "}";
  return o.str();
}

RuleResult blocked(std::string why) {
  RuleResult r;
  r.blocked.push_back(std::move(why));
  return r;
}

RuleResult derived(const Subject& s, Claim c, const std::string& rule, std::vector<std::size_t> premises,
                   nlohmann::json witness = nlohmann::json::object()) {
  RuleResult r;
  std::sort(premises.begin(), premises.end());
  premises.erase(std::unique(premises.begin(), premises.end()), premises.end());
  r.derived = Derivation{s, c, rule, std::move(premises), std::move(witness)};
  return r;
}

std::vector<long> expand_by(const std::vector<long>& Q, const std::vector<int>& sigma) {
  std::vector<long> S(Q.size(), 1);
  for (int i : sigma) S[static_cast<std::size_t>(i - 1)] = Q[static_cast<std::size_t>(i - 1)];
  return S;
}

// Subsets of {1..d} of size k in lexicographic order.
std::vector<std::vector<int>> combinations(int d, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int start) -> void {
    if (static_cast<int>(cur.size()) == k) {
      out.push_back(cur);
      return;
    }
    for (int i = start; i <= d; ++i) {
      cur.push_back(i);
      self(self, i + 1);
      cur.pop_back();
    }
  };
  rec(rec, 1);
  return out;
}

// Base-level subject from which a Q-level claim about the same face lifts.
bool base_lift_shape(const Context& ctx, const Subject& t, std::string& why) {
  if (t.variant != ctx.base_variant()) {
    why = "subject variant has no Z^d-periodic base polynomial";
    return false;
  }
  if (!ctx.variant_zd(t.variant)) {
    why = "potential is not Z^d-periodic";
    return false;
  }
  if (!ctx.subject_valid(t)) {
    why = "subject is not a valid expansion";
    return false;
  }
  return true;
}

// Every pair of vertices of the base polytope is joined by a strong chain of
// the selected facets.
bool chains_connect(const Polytope& P, const std::vector<Face>& faces) {
  const std::size_t k = faces.size();
  const std::size_t nv = P.vertices().size();
  if (nv <= 1) return k > 0 || nv == 0;
  std::vector<std::size_t> comp(k);
  std::iota(comp.begin(), comp.end(), 0);
  auto root = [&](std::size_t x) {
    while (comp[x] != x) x = comp[x] = comp[comp[x]];
    return x;
  };
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = a + 1; b < k; ++b)
      if (face_intersection_dim(faces[a], faces[b]) >= 1) comp[root(a)] = root(b);
  std::vector<std::set<std::size_t>> where(nv);
  for (std::size_t f = 0; f < k; ++f)
    for (auto v : faces[f].vertex_ids) where[v].insert(root(f));
  for (std::size_t a = 0; a < nv; ++a) {
    if (where[a].empty()) return false;
    for (std::size_t b = a + 1; b < nv; ++b) {
      bool shared = false;
      for (auto c : where[a])
        if (where[b].count(c)) shared = true;
      if (!shared) return false;
    }
  }
  return true;
}

// Greedily drops facets whose removal keeps all vertex pairs chained.
std::vector<std::size_t> prune_chain(const Polytope& P, const std::vector<Face>& faces,
                                     std::vector<std::size_t> keep) {
  for (std::size_t i = 0; i < keep.size();) {
    std::vector<Face> trial;
    for (std::size_t j = 0; j < keep.size(); ++j)
      if (j != i) trial.push_back(faces[keep[j]]);
    if (!trial.empty() && chains_connect(P, trial))
      keep.erase(keep.begin() + static_cast<long>(i));
    else
      ++i;
  }
  return keep;
}

struct NewtonCert {
  bool ok = false;
  std::string method;
  std::string why;
};

// newt(D_Q) for the variant equals the contracted |Q|-dilation of the base polytope.
NewtonCert newton_equals_dilation(const Context& ctx, Variant v) {
  NewtonCert c;
  if (ctx.variant_zd(v)) {
    c.ok = true;
    c.method = "expansion identity";
    return c;
  }
  const long N = ctx.order();
  if (ctx.exact_target()) {
    c.ok = Polytope::newton(*ctx.exact_target()) == contracted_dilation(ctx.base_polytope(), ctx.Q());
    c.method = "exact";
    if (!c.ok) c.why = "newt(D_Q) differs from the contracted dilation";
    return c;
  }
  const auto& P = ctx.base_polytope();
  std::vector<char> covered(P.vertices().size(), 0);
  for (const auto& f : P.facet_records()) {
    const auto& b = ctx.facet_bound(f.normal);
    if (b.trop < N * f.offset) {
      c.why = "weight bound below the dilated facet offset for normal " + vec_str(f.normal);
      return c;
    }
    if (constant_free_at(b, N * f.offset))
      for (auto id : f.vertex_ids) covered[id] = 1;
  }
  for (std::size_t i = 0; i < covered.size(); ++i)
    if (!covered[i]) {
      c.why = "vertex " + vec_str(P.vertices()[i]) + " lies on no potential-free facet";
      return c;
    }
  c.ok = true;
  c.method = "weight bounds";
  return c;
}

bool is_pure_power(const IVec& p, int d, int i) {
  if (p[static_cast<std::size_t>(i - 1)] == 0) return false;
  for (int j = 1; j <= d; ++j)
    if (j != i && p[static_cast<std::size_t>(j - 1)] != 0) return false;
  return true;
}

bool z_free_on(const IVec& p, const std::vector<int>& sigma) {
  for (int i : sigma)
    if (p[static_cast<std::size_t>(i - 1)] != 0) return false;
  return true;
}

}  // namespace

std::string rule_anchor(const std::string& rule) {
  static const std::map<std::string, std::string> a{
      {"lemma_red", "irreducibility descends to coarser period lattices"},
      {"pyramid", "integrally indecomposable pyramid over a lattice base"},
      {"axiom", "externally supplied statement"},
      {"weight_pi", "diagonal constants cannot reach the facial weight"},
      {"exact_pi", "facial coefficients free of potential symbols"},
      {"cor_coprime", "coprime pure powers lift irreducibility to D_Q"},
      {"lemma_coprime", "coprime Div lifts irreducibility along sigma"},
      {"th1", "irreducible on all k-subsets with (k+1)-wise coprime periods"},
      {"potential_transfer", "facial polynomial agrees with the periodic reference"},
      {"ohr_weakening", "irreducible implies only homothetically reducible"},
      {"ohr_propagation", "only homothetic reducibility lifts to expansions"},
      {"strong_chain_ohr", "strong chains of OHR faces give OHR"},
      {"cor_zd_periodic", "all but one facet periodic and OHR give OHR"},
      {"cor_irred", "OHR with an irreducible face gives irreducible"},
      {"flat_bands", "linear factor lambda - r of the dispersion polynomial"},
  };
  auto it = a.find(rule);
  return it == a.end() ? std::string() : it->second;
}

std::optional<std::size_t> pyramid_apex(const LaurentPoly& f) {
  if (f.is_zero() || f.is_monomial()) return std::nullopt;
  Polytope P = Polytope::newton(f);
  const auto& V = P.vertices();
  if (V.size() < 2) return std::nullopt;
  for (std::size_t a = 0; a < V.size(); ++a) {
    std::vector<IVec> others;
    for (std::size_t b = 0; b < V.size(); ++b)
      if (b != a) others.push_back(V[b]);
    if (affine_rank(others) != P.dim() - 1) continue;
    long g = 0;
    for (const auto& u : others)
      for (std::size_t i = 0; i < u.size(); ++i) g = std::gcd(g, V[a][i] - u[i]);
    if (g == 1) return a;
  }
  return std::nullopt;
}

RuleResult rule_lemma_red(const Context& ctx, const FactStore& st, const Subject& t) {
  const auto& Q = ctx.Q();
  if (t.S.size() != Q.size()) throw std::invalid_argument("lemma_red: A has wrong length");
  for (std::size_t i = 0; i < Q.size(); ++i)
    if (t.S[i] <= 0 || Q[i] % t.S[i] != 0) throw std::invalid_argument("lemma_red: A does not divide Q");
  if (!t.whole()) return blocked("lemma_red applies to whole dispersion polynomials");
  if (t.variant == Variant::Reference && ctx.zd()) return blocked("no reference variant for periodic potentials");
  if (!ctx.periodic_under(t.variant, t.S)) return blocked("potential is not " + vec_str(t.S) + "-periodic");
  Subject src{t.variant, Q, {}};
  auto p = st.find(src, Claim::Irreducible);
  if (!p) return blocked("missing Irreducible(" + ctx.describe(src) + ")");
  return derived(t, Claim::Irreducible, "lemma_red", {*p}, {{"A", t.S}});
}

RuleResult rule_pyramid(const Context& ctx, const Subject& t) {
  auto f = ctx.poly_of(t);
  if (!f) return blocked("polynomial not known exactly");
  auto a = pyramid_apex(f->normalize_monomial_unit());
  if (!a) return blocked("Newton polytope is not an indecomposable pyramid");
  Polytope P = Polytope::newton(*f);
  return derived(t, Claim::Irreducible, "pyramid", {}, {{"apex", P.vertices()[*a]}});
}

RuleResult rule_axiom(const Context& ctx, const Subject& t) {
  if (t.S != ctx.ones() || t.variant != ctx.base_variant())
    return blocked("axioms apply to base-level polynomials");
  const auto& l0 = ctx.input().lambda0;
  for (std::size_t k = 0; k < ctx.input().options.axioms.size(); ++k) {
    const auto& ax = ctx.input().options.axioms[k];
    if (!ax.graph.empty() && ax.graph != ctx.input().base.name()) continue;
    if (ax.any_lambda0) {
      if (!l0) continue;
    } else if (ax.lambda0.has_value() != l0.has_value() || (l0 && *ax.lambda0 != *l0)) {
      continue;
    }
    if (std::find(ax.faces.begin(), ax.faces.end(), t.face) == ax.faces.end()) continue;
    return derived(t, ax.claim, "axiom", {}, {{"axiom", k}, {"source", ax.source}});
  }
  return blocked("no axiom covers " + ctx.describe(t));
}

RuleResult rule_weight_pi(const Context& ctx, const Subject& t) {
  if (t.variant != Variant::Actual || t.S != ctx.Q() || t.whole())
    return blocked("weight bound certifies facets of D_Q only");
  if (!ctx.base_face(t.face)) return blocked("not a base facet");
  const auto& b = ctx.facet_bound(t.face);
  long target = ctx.order() * ctx.facet_offset(t.face);
  if (!constant_free_at(b, target))
    return blocked("weight bound fails at " + vec_str(t.face) + ": trop " + std::to_string(b.trop) +
                   ", with constant " + std::to_string(b.with_constant) + ", target " + std::to_string(target));
  return derived(t, Claim::PotentialIndependent, "weight_pi", {},
                 {{"trop", b.trop}, {"with_constant", b.with_constant}, {"target", target}});
}

RuleResult rule_exact_pi(const Context& ctx, const Subject& t) {
  if (t.whole()) return blocked("exact potential-independence is checked on faces");
  auto syms = ctx.potential_symbols(t.variant);
  if (syms.empty()) return blocked("potential has no free symbols");
  auto f = ctx.poly_of(t);
  if (!f) return blocked("facial polynomial not known exactly");
  if (!potential_independent(*f, syms)) return blocked("facial polynomial mentions the potential");
  return derived(t, Claim::PotentialIndependent, "exact_pi", {}, {{"symbols", syms.size()}});
}

RuleResult rule_cor_coprime(const Context& ctx, const FactStore& st, const Subject& t) {
  std::string why;
  if (!base_lift_shape(ctx, t, why)) return blocked(why);
  if (t.S != ctx.Q()) return blocked("cor_coprime targets D_Q");
  Subject base{t.variant, ctx.ones(), t.face};
  auto p = st.find(base, Claim::Irreducible);
  if (!p) return blocked("missing Irreducible(" + ctx.describe(base) + ")");
  const int d = ctx.d();
  LaurentPoly f = ctx.base_face_poly(t.face);
  auto supp = f.support();
  std::vector<int> all(static_cast<std::size_t>(d));
  std::iota(all.begin(), all.end(), 1);
  if (std::none_of(supp.begin(), supp.end(), [&](const IVec& x) { return z_free_on(x, all); }))
    return blocked("alpha guard: no term free of z in " + ctx.describe(base));
  nlohmann::json terms = nlohmann::json::array();
  for (int i = 1; i <= d; ++i) {
    long q = ctx.Q()[static_cast<std::size_t>(i - 1)];
    if (q == 1) continue;
    std::optional<IVec> hit;
    for (const auto& x : supp)
      if (is_pure_power(x, d, i) && std::gcd(q, x[static_cast<std::size_t>(i - 1)]) == 1) {
        hit = x;
        break;
      }
    if (!hit)
      return blocked("no term z" + std::to_string(i) + "^a with gcd(q" + std::to_string(i) + "=" +
                     std::to_string(q) + ", a) = 1 in " + ctx.describe(base));
    terms.push_back({{"i", i}, {"term", *hit}});
  }
  return derived(t, Claim::Irreducible, "cor_coprime", {*p}, {{"terms", terms}});
}

RuleResult rule_lemma_coprime(const Context& ctx, const FactStore& st, const Subject& t,
                              const std::vector<int>& sigma_in) {
  std::string why;
  if (!base_lift_shape(ctx, t, why)) return blocked(why);
  std::vector<int> sigma = sigma_in;
  std::sort(sigma.begin(), sigma.end());
  if (sigma.empty()) return blocked("sigma is empty");
  const auto& Q = ctx.Q();
  if (t.S != expand_by(Q, sigma)) return blocked("target is not the sigma-expansion " + set_str(sigma));
  LaurentPoly f = ctx.base_face_poly(t.face);
  auto supp = f.support();
  if (std::none_of(supp.begin(), supp.end(), [&](const IVec& x) { return z_free_on(x, sigma); }))
    return blocked("alpha guard: no term free of z_sigma for sigma " + set_str(sigma));
  std::vector<std::size_t> prem;
  const int k = static_cast<int>(sigma.size());
  for (unsigned mask = 0; mask + 1 < (1u << k); ++mask) {
    std::vector<int> sub;
    for (int b = 0; b < k; ++b)
      if (mask & (1u << b)) sub.push_back(sigma[static_cast<std::size_t>(b)]);
    Subject s{t.variant, expand_by(Q, sub), t.face};
    if (s == t) return blocked("sub-expansion " + set_str(sub) + " coincides with the target");
    auto p = st.find(s, Claim::Irreducible);
    if (!p) return blocked("missing Irreducible(" + ctx.describe(s) + ")");
    prem.push_back(*p);
  }
  std::ostringstream fails;
  for (int i : sigma) {
    long b = div_j_sigma(f, i, sigma);
    long q = Q[static_cast<std::size_t>(i - 1)];
    long g;
    if (b == 0) {
      if (!ctx.input().options.div_zero_as_q) {
        fails << " Div_" << i << "=0 blocks;";
        continue;
      }
      g = q;
    } else {
      g = std::gcd(q, b);
    }
    if (g == 1)
      return derived(t, Claim::Irreducible, "lemma_coprime", prem, {{"sigma", sigma}, {"i", i}, {"div", b}});
    fails << " gcd(q" << i << "=" << q << ", Div=" << b << ")=" << g << ";";
  }
  return blocked("no coprime index for sigma " + set_str(sigma) + ":" + fails.str());
}

RuleResult rule_th1(const Context& ctx, const FactStore& st, const Subject& t, int k) {
  std::string why;
  if (!base_lift_shape(ctx, t, why)) return blocked(why);
  const int d = ctx.d();
  const auto& Q = ctx.Q();
  if (t.S != Q) return blocked("th1 targets D_Q");
  if (k < 1 || k >= d) return blocked("k must satisfy 1 <= k < d");
  for (const auto& rho : combinations(d, k + 1)) {
    long g = 0;
    for (int i : rho) g = std::gcd(g, Q[static_cast<std::size_t>(i - 1)]);
    if (g != 1) return blocked("gcd over " + set_str(rho) + " is " + std::to_string(g));
  }
  std::vector<std::size_t> prem;
  for (const auto& sigma : combinations(d, k)) {
    Subject s{t.variant, expand_by(Q, sigma), t.face};
    if (s == t) return blocked("sigma-expansion " + set_str(sigma) + " coincides with the target");
    auto p = st.find(s, Claim::Irreducible);
    if (!p) return blocked("missing Irreducible(" + ctx.describe(s) + ")");
    prem.push_back(*p);
  }
  return derived(t, Claim::Irreducible, "th1", prem, {{"k", k}});
}

RuleResult rule_potential_transfer(const Context& ctx, const FactStore& st, const Subject& t, Claim c) {
  if (ctx.zd()) return blocked("potential is already Z^d-periodic");
  if (t.variant != Variant::Actual || t.S != ctx.Q() || t.whole())
    return blocked("transfer targets facets of D_Q");
  if (c != Claim::Irreducible && c != Claim::OnlyHomotheticallyReducible)
    return blocked("only irreducibility claims transfer");
  auto pi = st.find(t, Claim::PotentialIndependent);
  if (!pi) return blocked("missing PotentialIndependent(" + ctx.describe(t) + ")");
  Subject ref{Variant::Reference, t.S, t.face};
  auto r = st.find(ref, c);
  if (!r) return blocked("missing " + claim_name(c) + "(" + ctx.describe(ref) + ")");
  return derived(t, c, "potential_transfer", {*pi, *r});
}

RuleResult rule_ohr_weakening(const FactStore& st, const Subject& t) {
  auto p = st.find(t, Claim::Irreducible);
  if (!p) return blocked("missing Irreducible premise");
  return derived(t, Claim::OnlyHomotheticallyReducible, "ohr_weakening", {*p});
}

RuleResult rule_ohr_propagation(const Context& ctx, const FactStore& st, const Subject& t) {
  std::string why;
  if (!base_lift_shape(ctx, t, why)) return blocked(why);
  if (t.S == ctx.ones()) return blocked("target is the base polynomial");
  Subject base{t.variant, ctx.ones(), t.face};
  auto p = st.find(base, Claim::OnlyHomotheticallyReducible);
  if (!p) return blocked("missing OHR(" + ctx.describe(base) + ")");
  return derived(t, Claim::OnlyHomotheticallyReducible, "ohr_propagation", {*p});
}

RuleResult rule_strong_chain_ohr(const Context& ctx, const FactStore& st, const Subject& t) {
  if (!t.whole()) return blocked("strong chains certify whole polynomials");
  if (!ctx.subject_valid(t)) return blocked("invalid subject");
  const bool base_level = t.S == ctx.ones() && t.variant == ctx.base_variant();
  if (!base_level && t.S != ctx.Q()) return blocked("strong chains are checked on D and D_Q");
  nlohmann::json w = nlohmann::json::object();
  if (!base_level) {
    auto nc = newton_equals_dilation(ctx, t.variant);
    if (!nc.ok) return blocked("newt(D_Q) not certified: " + nc.why);
    w["newton"] = nc.method;
  }
  const auto& P = ctx.base_polytope();
  auto faces = P.facets();
  std::vector<std::size_t> cert;
  std::vector<std::size_t> ids(faces.size(), 0);
  for (std::size_t i = 0; i < faces.size(); ++i) {
    auto p = st.find({t.variant, t.S, faces[i].normal}, Claim::OnlyHomotheticallyReducible);
    if (p) {
      cert.push_back(i);
      ids[i] = *p;
    }
  }
  std::vector<Face> sel;
  for (auto i : cert) sel.push_back(faces[i]);
  if (sel.empty() || !chains_connect(P, sel))
    return blocked("OHR facets do not chain every pair of vertices (" + std::to_string(cert.size()) + " of " +
                   std::to_string(faces.size()) + " facets certified)");
  auto keep = prune_chain(P, faces, cert);
  std::vector<std::size_t> prem;
  nlohmann::json used = nlohmann::json::array();
  for (auto i : keep) {
    prem.push_back(ids[i]);
    used.push_back(faces[i].normal);
  }
  w["facets"] = used;
  return derived(t, Claim::OnlyHomotheticallyReducible, "strong_chain_ohr", prem, w);
}

RuleResult rule_cor_zd_periodic(const Context& ctx, const FactStore& st, const Subject& t) {
  if (t != ctx.target()) return blocked("cor_zd_periodic targets D_Q");
  auto nc = newton_equals_dilation(ctx, Variant::Actual);
  if (!nc.ok) return blocked("newt(D_Q) not certified: " + nc.why);
  const auto& P = ctx.base_polytope();
  auto faces = P.facets();
  if (faces.size() < 2) return blocked("degenerate polytope with fewer than two facets");
  std::vector<std::vector<std::size_t>> prem(faces.size());
  std::vector<std::size_t> missing;
  for (std::size_t i = 0; i < faces.size(); ++i) {
    const auto& w = faces[i].normal;
    if (ctx.zd()) {
      auto o = st.find({Variant::Actual, ctx.ones(), w}, Claim::OnlyHomotheticallyReducible);
      if (o) prem[i] = {*o};
    } else {
      auto pi = st.find({Variant::Actual, ctx.Q(), w}, Claim::PotentialIndependent);
      auto o = st.find({Variant::Reference, ctx.ones(), w}, Claim::OnlyHomotheticallyReducible);
      if (pi && o) prem[i] = {*pi, *o};
    }
    if (prem[i].empty()) missing.push_back(i);
  }
  if (missing.size() > 1)
    return blocked(std::to_string(missing.size()) + " facets lack periodic OHR facial polynomials");
  std::vector<std::size_t> order;
  if (missing.size() == 1)
    order = missing;
  else
    for (std::size_t i = faces.size(); i-- > 0;) order.push_back(i);
  for (auto ex : order) {
    std::vector<Face> sel;
    for (std::size_t i = 0; i < faces.size(); ++i)
      if (i != ex) sel.push_back(faces[i]);
    if (!chains_connect(P, sel)) continue;
    std::vector<std::size_t> all;
    for (std::size_t i = 0; i < faces.size(); ++i)
      if (i != ex) all.insert(all.end(), prem[i].begin(), prem[i].end());
    return derived(t, Claim::OnlyHomotheticallyReducible, "cor_zd_periodic", all,
                   {{"excluded", faces[ex].normal}, {"newton", nc.method}});
  }
  return blocked("remaining facets do not chain every pair of vertices");
}

RuleResult rule_cor_irred(const Context& ctx, const FactStore& st, const Subject& t) {
  if (!t.whole()) return blocked("cor_irred targets whole polynomials");
  auto o = st.find(t, Claim::OnlyHomotheticallyReducible);
  if (!o) return blocked("missing OHR(" + ctx.describe(t) + ")");
  for (const auto& w : ctx.base_facets()) {
    auto p = st.find({t.variant, t.S, w}, Claim::Irreducible);
    if (!p) continue;
    if (ctx.base_face_poly(w).is_monomial()) continue;
    return derived(t, Claim::Irreducible, "cor_irred", {*o, *p}, {{"face", w}});
  }
  return blocked("no facet of " + ctx.describe(t) + " is certified irreducible");
}

RuleResult rule_flat_bands(const Context& ctx, const Subject& t) {
  if (t != ctx.target()) return blocked("flat bands are extracted from D_Q");
  if (!ctx.exact_target()) return blocked(ctx.exact_note());
  auto fb = flat_bands(*ctx.exact_target());
  if (fb.empty()) return blocked("no flat bands");
  nlohmann::json f = nlohmann::json::array();
  for (const auto& b : fb) f.push_back({{"r", rational_string(b.r)}, {"multiplicity", b.multiplicity}});
  return derived(t, Claim::Reducible, "flat_bands", {}, {{"factors", f}});
}

}  // namespace bloch
