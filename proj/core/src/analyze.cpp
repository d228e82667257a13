#include <algorithm>
#include <set>
#include <sstream>

#include "bloch/criteria.hpp"

namespace bloch {

namespace {

std::vector<std::vector<int>> subsets_by_size(int d) {
  std::vector<std::vector<int>> out;
  for (int k = 1; k <= d; ++k) {
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
  }
  return out;
}

std::vector<long> expand_by(const std::vector<long>& Q, const std::vector<int>& sigma) {
  std::vector<long> S(Q.size(), 1);
  for (int i : sigma) S[static_cast<std::size_t>(i - 1)] = Q[static_cast<std::size_t>(i - 1)];
  return S;
}

nlohmann::json fact_json(const Context& ctx, const Fact& f) {
  return {{"id", f.id},
          {"subject", ctx.describe(f.subject)},
          {"subject_data", subject_to_json(f.subject)},
          {"claim", claim_name(f.claim)},
          {"rule", f.rule},
          {"premises", f.premises},
          {"paper_ref", f.paper_ref},
          {"witness", f.witness}};
}

}  // namespace

FactStore run_rules(const Context& ctx, std::vector<std::string>* blocking) {
  FactStore st;
  const auto ones = ctx.ones();
  const auto& Q = ctx.Q();
  const Variant vb = ctx.base_variant();
  std::vector<Variant> variants{Variant::Actual};
  if (!ctx.zd()) variants.push_back(Variant::Reference);
  std::vector<IVec> faces{IVec{}};
  for (const auto& w : ctx.base_facets()) faces.push_back(w);
  const auto facets = ctx.base_facets();
  const auto sigmas = subsets_by_size(ctx.d());

  std::vector<std::vector<long>> expansions{ones};
  for (const auto& s : sigmas) {
    auto S = expand_by(Q, s);
    if (std::find(expansions.begin(), expansions.end(), S) == expansions.end()) expansions.push_back(S);
  }

  bool changed = true;
  bool first = true;
  std::vector<std::string> blk;
  auto apply = [&](const Subject& t, const RuleResult& r) {
    if (r.derived) {
      const auto& d = *r.derived;
      if (st.find(d.subject, d.claim)) return;
      st.add({0, d.subject, d.claim, d.rule, rule_anchor(d.rule), d.premises, d.witness});
      changed = true;
    } else if (t.S == Q) {
      for (const auto& b : r.blocked) blk.push_back(ctx.describe(t) + ": " + b);
    }
  };
  auto known = [&](const Subject& t, Claim c) { return st.find(t, c).has_value(); };

  while (changed) {
    changed = false;
    blk.clear();
    for (auto v : variants)
      for (const auto& A : expansions) {
        Subject t{v, A, {}};
        if (A == Q || !ctx.subject_valid(t) || known(t, Claim::Irreducible)) continue;
        auto r = rule_lemma_red(ctx, st, t);
        if (r.derived) apply(t, r);
      }
    if (first) {
      for (const auto& f : faces) {
        Subject t{vb, ones, f};
        apply(t, rule_pyramid(ctx, t));
        apply(t, rule_axiom(ctx, t));
        if (ctx.exact_target() && Q != ones) {
          Subject a{Variant::Actual, Q, f};
          apply(a, rule_pyramid(ctx, a));
        }
      }
      for (const auto& w : facets) {
        Subject t{Variant::Actual, Q, w};
        auto r = rule_weight_pi(ctx, t);
        if (!r.derived) r = rule_exact_pi(ctx, t);
        apply(t, r);
        if (Q != ones) {
          Subject b{vb, ones, w};
          auto e = rule_exact_pi(ctx, b);
          if (e.derived) apply(b, e);
        }
      }
      apply(ctx.target(), rule_flat_bands(ctx, ctx.target()));
      first = false;
    }
    for (const auto& f : faces) {
      Subject t{vb, Q, f};
      if (!known(t, Claim::Irreducible)) apply(t, rule_cor_coprime(ctx, st, t));
    }
    for (const auto& f : faces)
      for (const auto& s : sigmas) {
        Subject t{vb, expand_by(Q, s), f};
        if (t.S == ones || known(t, Claim::Irreducible)) continue;
        apply(t, rule_lemma_coprime(ctx, st, t, s));
      }
    for (int k = 1; k < ctx.d(); ++k)
      for (const auto& f : faces) {
        Subject t{vb, Q, f};
        if (!known(t, Claim::Irreducible)) apply(t, rule_th1(ctx, st, t, k));
      }
    if (!ctx.zd())
      for (const auto& w : facets)
        for (Claim c : {Claim::Irreducible, Claim::OnlyHomotheticallyReducible}) {
          Subject t{Variant::Actual, Q, w};
          if (!known(t, c)) apply(t, rule_potential_transfer(ctx, st, t, c));
        }
    {
      std::vector<Subject> irr;
      for (const auto& f : st.facts())
        if (f.claim == Claim::Irreducible) irr.push_back(f.subject);
      for (const auto& t : irr)
        if (!known(t, Claim::OnlyHomotheticallyReducible)) apply(t, rule_ohr_weakening(st, t));
    }
    if (Q != ones)
      for (const auto& f : faces) {
        Subject t{vb, Q, f};
        if (!known(t, Claim::OnlyHomotheticallyReducible)) apply(t, rule_ohr_propagation(ctx, st, t));
      }
    {
      std::vector<Subject> wholes{{vb, ones, {}}};
      for (auto v : variants) wholes.push_back({v, Q, {}});
      for (const auto& t : wholes)
        if (!known(t, Claim::OnlyHomotheticallyReducible)) apply(t, rule_strong_chain_ohr(ctx, st, t));
    }
    if (!known(ctx.target(), Claim::OnlyHomotheticallyReducible))
      apply(ctx.target(), rule_cor_zd_periodic(ctx, st, ctx.target()));
    {
      std::vector<Subject> wholes;
      for (const auto& A : expansions) wholes.push_back({vb, A, {}});
      for (auto v : variants) wholes.push_back({v, Q, {}});
      for (const auto& t : wholes)
        if (ctx.subject_valid(t) && !known(t, Claim::Irreducible)) apply(t, rule_cor_irred(ctx, st, t));
    }
  }
  if (blocking) {
    std::set<std::string> seen;
    blocking->clear();
    for (const auto& b : blk)
      if (seen.insert(b).second) blocking->push_back(b);
  }
  return st;
}

Verdict analyze(const AnalysisInput& in) {
  Context ctx(in);
  Verdict v;
  std::vector<std::string> blk;
  FactStore st = run_rules(ctx, &blk);
  const Subject T = ctx.target();

  std::vector<std::size_t> roots;
  if (auto r = st.find(T, Claim::Reducible)) {
    v.kind = VerdictKind::ReducibleWithFactors;
    for (const auto& f : st.get(*r).witness.at("factors"))
      v.factors.push_back({parse_rational(f.at("r").get<std::string>()), f.at("multiplicity").get<int>()});
    roots.push_back(*r);
  } else if (auto i = st.find(T, Claim::Irreducible)) {
    v.kind = VerdictKind::Irreducible;
    roots.push_back(*i);
  } else if (auto o = st.find(T, Claim::OnlyHomotheticallyReducible)) {
    v.kind = VerdictKind::OnlyHomotheticallyReducible;
    roots.push_back(*o);
  } else {
    v.kind = VerdictKind::Inconclusive;
    v.blocking = blk;
    for (const auto& f : st.facts()) roots.push_back(f.id);
  }

  std::set<std::size_t> keep;
  std::vector<std::size_t> stack = roots;
  while (!stack.empty()) {
    auto id = stack.back();
    stack.pop_back();
    if (!keep.insert(id).second) continue;
    for (auto p : st.get(id).premises) stack.push_back(p);
  }

  nlohmann::json facts = nlohmann::json::array();
  std::set<std::string> axioms_used;
  for (const auto& f : st.facts()) {
    if (!keep.count(f.id)) continue;
    facts.push_back(fact_json(ctx, f));
    if (f.rule == "axiom") axioms_used.insert(f.witness.at("source").get<std::string>());
  }
  nlohmann::json fb = nlohmann::json::array();
  for (const auto& b : v.factors) fb.push_back({{"r", rational_string(b.r)}, {"multiplicity", b.multiplicity}});

  v.certificate = {{"verdict", verdict_name(v.kind)},
                   {"target", ctx.describe(T)},
                   {"facts", facts},
                   {"axioms", std::vector<std::string>(axioms_used.begin(), axioms_used.end())},
                   {"assumptions", ctx.assumptions()},
                   {"blocking", v.blocking},
                   {"flat_bands", fb},
                   {"potential_periodic", ctx.zd() ? "Z^d" : "Q"},
                   {"exact", ctx.exact_note()},
                   {"context", input_to_json(in)}};

  v.log.push_back("target: " + ctx.describe(T));
  v.log.push_back("verdict: " + verdict_name(v.kind));
  v.log.push_back(std::string("potential: ") + (ctx.zd() ? "Z^d-periodic" : "Q-periodic only; zero-potential reference"));
  v.log.push_back(ctx.exact_note());
  for (const auto& f : st.facts()) {
    if (!keep.count(f.id)) continue;
    std::ostringstream o;
    o << "  [" << f.id << "] " << claim_name(f.claim) << " " << ctx.describe(f.subject) << "  <- " << f.rule;
    if (!f.premises.empty()) {
      o << " (";
      for (std::size_t k = 0; k < f.premises.size(); ++k) o << (k ? "," : "") << f.premises[k];
      o << ")";
    }
    v.log.push_back(o.str());
  }
  for (const auto& a : ctx.assumptions()) v.log.push_back("assumption: " + a);
  for (const auto& b : v.blocking) v.log.push_back("blocked: " + b);
  return v;
}

}  // namespace bloch
