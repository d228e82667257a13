#include <algorithm>
#include <map>

#include "bloch/criteria.hpp"

namespace bloch {

namespace {

RuleResult dispatch(const Context& ctx, const FactStore& st, const std::string& rule, const Subject& t, Claim c,
                    const nlohmann::json& witness) {
  if (rule == "lemma_red") return rule_lemma_red(ctx, st, t);
  if (rule == "pyramid") return rule_pyramid(ctx, t);
  if (rule == "axiom") return rule_axiom(ctx, t);
  if (rule == "weight_pi") return rule_weight_pi(ctx, t);
  if (rule == "exact_pi") return rule_exact_pi(ctx, t);
  if (rule == "cor_coprime") return rule_cor_coprime(ctx, st, t);
  if (rule == "lemma_coprime") return rule_lemma_coprime(ctx, st, t, witness.at("sigma").get<std::vector<int>>());
  if (rule == "th1") return rule_th1(ctx, st, t, witness.at("k").get<int>());
  if (rule == "potential_transfer") return rule_potential_transfer(ctx, st, t, c);
  if (rule == "ohr_weakening") return rule_ohr_weakening(st, t);
  if (rule == "ohr_propagation") return rule_ohr_propagation(ctx, st, t);
  if (rule == "strong_chain_ohr") return rule_strong_chain_ohr(ctx, st, t);
  if (rule == "cor_zd_periodic") return rule_cor_zd_periodic(ctx, st, t);
  if (rule == "cor_irred") return rule_cor_irred(ctx, st, t);
  if (rule == "flat_bands") return rule_flat_bands(ctx, t);
  RuleResult r;
  r.blocked.push_back("unknown rule '" + rule + "'");
  return r;
}

}  // namespace

ReplayReport replay(const nlohmann::json& cert) {
  ReplayReport rep;
  auto fail = [&](std::string s) {
    rep.ok = false;
    rep.failures.push_back(std::move(s));
  };
  std::optional<Context> ctx;
  try {
    ctx.emplace(input_from_json(cert.at("context")));
  } catch (const std::exception& e) {
    fail(std::string("context: ") + e.what());
    return rep;
  }

  std::map<std::size_t, Fact> seen;
  for (const auto& fj : cert.at("facts")) {
    Fact f;
    f.id = fj.at("id").get<std::size_t>();
    f.subject = subject_from_json(fj.at("subject_data"));
    f.claim = claim_from_name(fj.at("claim").get<std::string>());
    f.rule = fj.at("rule").get<std::string>();
    f.premises = fj.at("premises").get<std::vector<std::size_t>>();
    f.witness = fj.value("witness", nlohmann::json::object());
    const std::string tag = "fact " + std::to_string(f.id) + " (" + f.rule + ")";
    if (seen.count(f.id)) {
      fail(tag + ": duplicate id");
      continue;
    }
    FactStore st;
    bool premises_ok = true;
    for (auto p : f.premises) {
      auto it = seen.find(p);
      if (it == seen.end()) {
        fail(tag + ": premise " + std::to_string(p) + " is not an earlier fact");
        premises_ok = false;
        continue;
      }
      Fact copy = it->second;
      copy.premises.clear();
      st.add(copy);
    }
    seen[f.id] = f;
    if (!premises_ok) continue;
    RuleResult r;
    try {
      r = dispatch(*ctx, st, f.rule, f.subject, f.claim, f.witness);
    } catch (const std::exception& e) {
      fail(tag + ": " + e.what());
      continue;
    }
    if (!r.derived) {
      fail(tag + ": " + (r.blocked.empty() ? std::string("not derivable") : r.blocked.front()));
      continue;
    }
    if (r.derived->subject != f.subject || r.derived->claim != f.claim) {
      fail(tag + ": rule derives a different claim");
      continue;
    }
    for (auto p : r.derived->premises)
      if (std::find(f.premises.begin(), f.premises.end(), p) == f.premises.end())
        fail(tag + ": rule used an unlisted premise");
  }

  const auto verdict = cert.at("verdict").get<std::string>();
  const Subject T = ctx->target();
  auto has = [&](Claim c) {
    return std::any_of(seen.begin(), seen.end(), [&](const auto& kv) {
      return kv.second.subject == T && kv.second.claim == c;
    });
  };
  if (verdict == "Irreducible" && !has(Claim::Irreducible)) fail("verdict Irreducible without a target fact");
  if (verdict == "OnlyHomotheticallyReducible" && !has(Claim::OnlyHomotheticallyReducible))
    fail("verdict OHR without a target fact");
  if (verdict == "ReducibleWithFactors" && !has(Claim::Reducible)) fail("verdict Reducible without a target fact");
  return rep;
}

}  // namespace bloch
