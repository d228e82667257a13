#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "bloch/criteria.hpp"
#include "bloch/div.hpp"
#include "bloch/flat_bands.hpp"
#include "bloch/periodic_graph.hpp"
#include "support/oracles.hpp"

using namespace bloch;

namespace {

LaurentPoly Z(int i, int p = 1) { return LaurentPoly::z(2, i, p); }
LaurentPoly L() { return LaurentPoly::lambda(2); }
LaurentPoly C(long c) { return LaurentPoly::constant(2, ParamPoly(c)); }

LaurentPoly example_f() { return Z(1, 2) * Z(2, 2) + L() * Z(1, 4) + L() * L() * L(); }

AnalysisInput make(const PeriodicGraph& g, std::vector<long> Q, const std::string& potential,
                   const std::string& labels = "symbolic") {
  AnalysisInput in;
  in.base = g.with_label_values(labels_from_spec(g, labels));
  in.Q = std::move(Q);
  in.potential_Q = potential_from_spec(in.base, in.Q, potential);
  return in;
}

bool blocked_with(const RuleResult& r, const std::string& text) {
  if (r.derived) return false;
  return std::any_of(r.blocked.begin(), r.blocked.end(),
                     [&](const std::string& s) { return s.find(text) != std::string::npos; });
}

Fact fact(const Subject& s, Claim c, std::size_t id) {
  Fact f;
  f.id = id;
  f.subject = s;
  f.claim = c;
  f.rule = "given";
  return f;
}

std::vector<IVec> random_support(oracle::Rng& r) {
  std::vector<IVec> pts;
  for (long i = 0, n = r.uniform(1, 6); i < n; ++i)
    pts.push_back({r.uniform(-3, 3), r.uniform(-3, 3), r.uniform(0, 3)});
  return pts;
}

}  // namespace

TEST_CASE("Div examples") {
  auto f = example_f();
  CHECK(div_j_sigma(f, 1, {1}) == 2);
  CHECK(div_j_sigma(f, 1, {1, 2}) == 4);
  CHECK(div_j_sigma(L() + Z(1), 1, {1}) == 1);
  CHECK(div_j_sigma(L() + Z(1), 1, {1, 2}) == 1);
  CHECK(div_j_sigma(L() * L() * L(), 1, {1}) == 0);
  CHECK_THROWS(div_j_sigma(f, 2, {1}));
}

TEST_CASE("Div of the third worked polynomial: printed support versus the corrected one") {
  auto printed = Z(1, 3) * Z(2, 2) + Z(1, 2) * Z(2, -1) + L();
  CHECK(div_j_sigma(printed, 1, {1, 2}) == 7);
  CHECK(oracle::brute_div(printed.support(), 1, {1, 2}) == 7);
  auto corrected = Z(1, 3) * Z(2, 2) + Z(1, -2) * Z(2, -1) + L();
  CHECK(div_j_sigma(corrected, 1, {1, 2}) == 1);
  CHECK(oracle::brute_div(corrected.support(), 1, {1, 2}) == 1);
}

TEST_CASE("property: Div agrees with the brute-force oracle") {
  oracle::Rng r(61);
  int agree = 0;
  for (int rep = 0; rep < 200; ++rep) {
    auto pts = random_support(r);
    int j = static_cast<int>(r.uniform(1, 2));
    std::vector<int> sigma = r.uniform(0, 1) ? std::vector<int>{j} : std::vector<int>{1, 2};
    long fast = div_j_sigma(pts, j, sigma);
    long slow = oracle::brute_div(pts, j, sigma, pts.size() > 4 ? 3 : 4);
    // a bounded search can only miss lattice vectors, never invent them
    if (fast == 0) CHECK(slow == 0);
    else CHECK(slow % fast == 0);
    if (slow == fast) ++agree;
  }
  CHECK(agree == 200);
}

TEST_CASE("property: Div monotonicity") {
  oracle::Rng r(67);
  for (int rep = 0; rep < 200; ++rep) {
    auto pts = random_support(r);
    for (int j = 1; j <= 2; ++j) {
      long small = div_j_sigma(pts, j, {j}), big = div_j_sigma(pts, j, {1, 2});
      if (small == 0) CHECK(big == 0);
      else CHECK(big % small == 0);
    }
  }
}

TEST_CASE("pyramid_apex") {
  auto one = one_vertex(2, {{{1, 0}, ParamPoly::symbol("a1")}, {{0, 1}, ParamPoly::symbol("a2")}}).dispersion();
  CHECK(pyramid_apex(one.normalize_monomial_unit()).has_value());
  auto facet = L() * L() * C(2) + Z(1) * C(3) + Z(2) * C(5);
  CHECK(pyramid_apex(facet).has_value());
  auto g = Z(1) * Z(2) + Z(1) + Z(2) + C(2);
  CHECK_FALSE(pyramid_apex(g * g).has_value());
  CHECK_FALSE(pyramid_apex(C(4)).has_value());
}

TEST_CASE("potential_independent") {
  auto D = honeycomb_diamond(2).dispersion();
  std::set<std::string> V{"V_u", "V_v"};
  CHECK(potential_independent(D.facial({-2, -2, -1}), V));
  CHECK_FALSE(potential_independent(D.facial({0, 0, 1}), V));
  auto num = D.substitute_params({{"V_u", ParamPoly(1)}, {"V_v", ParamPoly(2)}});
  CHECK(potential_independent(num.facial({0, 0, 1}), V));
}

TEST_CASE("lemma_red") {
  Context ctx(make(honeycomb_diamond(2), {2, 3}, "symbolic-zd"));
  FactStore st;
  CHECK(blocked_with(rule_lemma_red(ctx, st, {Variant::Actual, {1, 1}, {}}), "missing Irreducible"));
  st.add(fact(ctx.target(), Claim::Irreducible, 1));
  auto r = rule_lemma_red(ctx, st, {Variant::Actual, {1, 1}, {}});
  REQUIRE(r.derived.has_value());
  CHECK(r.derived->premises == std::vector<std::size_t>{1});
  CHECK(rule_lemma_red(ctx, st, ctx.target()).derived.has_value());
  CHECK_THROWS(rule_lemma_red(ctx, st, {Variant::Actual, {2, 2}, {}}));
}

TEST_CASE("th1") {
  Context ctx(make(honeycomb_diamond(2), {2, 3}, "symbolic-zd"));
  FactStore st;
  st.add(fact({Variant::Actual, {2, 1}, {}}, Claim::Irreducible, 1));
  CHECK(blocked_with(rule_th1(ctx, st, ctx.target(), 1), "missing Irreducible"));
  st.add(fact({Variant::Actual, {1, 3}, {}}, Claim::Irreducible, 2));
  auto r = rule_th1(ctx, st, ctx.target(), 1);
  REQUIRE(r.derived.has_value());
  CHECK(r.derived->premises == std::vector<std::size_t>{1, 2});

  Context bad(make(honeycomb_diamond(2), {2, 4}, "symbolic-zd"));
  FactStore st2;
  st2.add(fact({Variant::Actual, {2, 1}, {}}, Claim::Irreducible, 1));
  st2.add(fact({Variant::Actual, {1, 4}, {}}, Claim::Irreducible, 2));
  CHECK(blocked_with(rule_th1(bad, st2, bad.target(), 1), "gcd over {1,2} is 2"));

  Context qz(make(honeycomb_diamond(2), {2, 3}, "random-rational(3)", "random-rational(3)"));
  CHECK(blocked_with(rule_th1(qz, st, {Variant::Actual, {2, 3}, {}}, 1), "no Z^d-periodic base"));
}

TEST_CASE("lemma_coprime and the alpha guard") {
  Context ctx(make(honeycomb_diamond(2), {2, 3}, "symbolic-zd"));
  FactStore st;
  const IVec w{-2, -2, -1};
  st.add(fact({Variant::Actual, {1, 1}, w}, Claim::Irreducible, 1));
  auto r = rule_lemma_coprime(ctx, st, {Variant::Actual, {2, 1}, w}, {1});
  REQUIRE(r.derived.has_value());
  CHECK(r.derived->witness.at("div") == 1);

  // D = -c z - c/z - l once V = -2c: the base edge has no z-free term.
  Context guard(make(line_graph(1), {2}, "u=-2", "c=1"));
  FactStore s2;
  s2.add(fact({Variant::Actual, {1}, {0, 1}}, Claim::Irreducible, 1));
  CHECK(blocked_with(rule_lemma_coprime(guard, s2, {Variant::Actual, {2}, {0, 1}}, {1}), "alpha guard"));
  CHECK(blocked_with(rule_cor_coprime(guard, s2, {Variant::Actual, {2}, {0, 1}}), "alpha guard"));

  Context two(make(line_graph(2), {2}, "symbolic-zd"));
  FactStore s3;
  s3.add(fact({Variant::Actual, {1}, {}}, Claim::Irreducible, 1));
  CHECK(blocked_with(rule_lemma_coprime(two, s3, {Variant::Actual, {2}, {}}, {1}), "gcd(q1=2, Div=2)=2"));
  CHECK(blocked_with(rule_cor_coprime(two, s3, {Variant::Actual, {2}, {}}), "gcd(q1=2, a) = 1"));
}

TEST_CASE("cor_coprime") {
  Context ctx(make(dense_2d(), {4, 6}, "symbolic-zd"));
  FactStore st;
  const IVec w{-1, -1, -1};
  CHECK(blocked_with(rule_cor_coprime(ctx, st, {Variant::Actual, {4, 6}, w}), "missing Irreducible"));
  st.add(fact({Variant::Actual, {1, 1}, w}, Claim::Irreducible, 1));
  auto r = rule_cor_coprime(ctx, st, {Variant::Actual, {4, 6}, w});
  REQUIRE(r.derived.has_value());
  for (const auto& t : r.derived->witness.at("terms")) CHECK(t.at("term").at(2) == 1);
}

TEST_CASE("OHR rules") {
  Context ctx(make(honeycomb_diamond(2), {2, 1}, "symbolic-zd"));
  FactStore st;
  CHECK(blocked_with(rule_ohr_weakening(st, ctx.target()), "missing"));
  st.add(fact({Variant::Actual, {1, 1}, {}}, Claim::Irreducible, 1));
  auto w = rule_ohr_weakening(st, {Variant::Actual, {1, 1}, {}});
  REQUIRE(w.derived.has_value());
  CHECK(w.derived->claim == Claim::OnlyHomotheticallyReducible);
  st.add(fact({Variant::Actual, {1, 1}, {}}, Claim::OnlyHomotheticallyReducible, 2));
  CHECK(rule_ohr_propagation(ctx, st, ctx.target()).derived.has_value());
  CHECK(blocked_with(rule_cor_irred(ctx, st, ctx.target()), "missing OHR"));

  const auto& P = ctx.base_polytope();
  const auto apex = *P.vertex_index({0, 0, 2});
  std::vector<IVec> lateral;
  for (const auto& f : P.facets())
    if (f.contains_vertex(apex)) lateral.push_back(f.normal);
  REQUIRE(lateral.size() == 6);
  FactStore chain;
  chain.add(fact({Variant::Actual, {2, 1}, lateral[0]}, Claim::OnlyHomotheticallyReducible, 10));
  CHECK(blocked_with(rule_strong_chain_ohr(ctx, chain, ctx.target()), "do not chain"));
  CHECK(blocked_with(rule_cor_zd_periodic(ctx, chain, ctx.target()), "facets lack"));
  for (std::size_t i = 1; i < lateral.size(); ++i)
    chain.add(fact({Variant::Actual, {2, 1}, lateral[i]}, Claim::OnlyHomotheticallyReducible, 10 + i));
  auto sc = rule_strong_chain_ohr(ctx, chain, ctx.target());
  REQUIRE(sc.derived.has_value());
  CHECK(sc.derived->premises.size() <= 6);

  chain.add(fact(ctx.target(), Claim::OnlyHomotheticallyReducible, 20));
  CHECK(blocked_with(rule_cor_irred(ctx, chain, ctx.target()), "no facet"));
  chain.add(fact({Variant::Actual, {2, 1}, lateral[2]}, Claim::Irreducible, 21));
  auto ci = rule_cor_irred(ctx, chain, ctx.target());
  REQUIRE(ci.derived.has_value());
  CHECK(ci.derived->premises == std::vector<std::size_t>{20, 21});
}

TEST_CASE("flat bands") {
  for (const auto& Q : std::vector<std::vector<long>>{{1, 1}, {2, 1}, {2, 2}, {1, 3}, {4, 1}}) {
    auto g = omega_honeycomb();
    auto in = make(g, Q, "symbolic-zd", "random-rational(5)");
    std::map<std::string, ParamPoly> vals{{"V_u", ParamPoly(mpq_class(1, 7))}, {"V_v", ParamPoly(2)},
                                          {"V_Omega", ParamPoly(3)}};
    auto DQ = q_expand(in.base, Q).expanded.dispersion().substitute_params(vals);
    auto fb = flat_bands(DQ);
    REQUIRE(fb.size() == 1);
    CHECK(fb[0].r == 3);
    CHECK(fb[0].multiplicity == order_of(Q));
    CHECK(DQ.exact_divide(lambda_factor(2, 3, fb[0].multiplicity)).has_value());
  }
  auto hc = honeycomb_diamond(2);
  auto num = hc.with_label_values(labels_from_spec(hc, "random-rational(9)"))
                 .with_potential({ParamPoly(1), ParamPoly(mpq_class(-2, 3))});
  CHECK(flat_bands(num.dispersion()).empty());
  CHECK_THROWS(flat_bands(hc.dispersion()));
}

TEST_CASE("dice flat band needs equal diagonal entries on the outer vertices") {
  auto g = dice(2);
  auto labels = labels_from_spec(g, "random-rational(11)");
  mpq_class gs = 0, bs = 0;
  for (const auto& [k, v] : labels) (k[0] == 'g' ? gs : bs) += v.constant_value();
  mpq_class v1 = mpq_class(1, 3), v3 = gs + v1 - bs;
  auto num = g.with_label_values(labels).with_potential({ParamPoly(v1), ParamPoly(5), ParamPoly(v3)});
  auto fb = flat_bands(num.dispersion());
  REQUIRE(fb.size() == 1);
  CHECK(fb[0].r == gs + v1);
  auto same = g.with_label_values(labels).with_potential({ParamPoly(v1), ParamPoly(5), ParamPoly(v1)});
  if (gs != bs) CHECK(flat_bands(same.dispersion()).empty());
}

TEST_CASE("property: flat-band completeness") {
  oracle::Rng r(71);
  auto g = dense_2d();
  for (int rep = 0; rep < 12; ++rep) {
    auto num = g.with_label_values(labels_from_spec(g, "random-rational(" + std::to_string(rep + 1) + ")"))
                   .with_potential({ParamPoly(r.rational()), ParamPoly(r.rational())});
    auto f = num.dispersion();
    auto base = flat_bands(f);
    mpq_class rr = r.rational();
    int k = static_cast<int>(r.uniform(1, 3));
    auto fb = flat_bands(f * lambda_factor(2, rr, k));
    int before = 0, after = 0;
    for (const auto& b : base)
      if (b.r == rr) before = b.multiplicity;
    for (const auto& b : fb)
      if (b.r == rr) after = b.multiplicity;
    CHECK(after == before + k);
    CHECK(divide_flat_bands(f * lambda_factor(2, rr, k), fb) == divide_flat_bands(f, base));
  }
}

TEST_CASE("analyze: honeycomb with a QZ-periodic potential") {
  auto in = make(honeycomb_diamond(2), {2, 3}, "random-rational(7)");
  auto v = analyze(in);
  CHECK(v.certificate.at("facts").size() > 10);
  CHECK(v.kind == VerdictKind::Irreducible);
  CHECK(replay(v.certificate).ok);
  auto again = analyze(in);
  CHECK(again.certificate.dump() == v.certificate.dump());
}

TEST_CASE("analyze: one-vertex Fermi slice") {
  for (const auto& Q : std::vector<std::vector<long>>{{2, 3, 1}, {2, 3, 5}}) {
    auto in = make(cross_graph({1, 1, 2}), Q, "random-rational(4)");
    in.lambda0 = mpq_class(1, 2);
    auto v = analyze(in);
    CHECK(v.kind == VerdictKind::Irreducible);
    CHECK(replay(v.certificate).ok);
  }
  // edges of a polygon meet only in vertices, so d = 2 slices have no strong chains
  auto flat = make(cross_graph({1, 2}), {3, 1}, "symbolic-zd");
  flat.lambda0 = 0;
  CHECK(analyze(flat).kind == VerdictKind::Inconclusive);
}

TEST_CASE("analyze: inconclusive when the only pure power shares a factor with q") {
  auto v = analyze(make(line_graph(2), {2}, "random-rational(3)", "random-rational(3)"));
  CHECK(v.kind == VerdictKind::Inconclusive);
  CHECK_FALSE(v.blocking.empty());
}

TEST_CASE("certificate tampering") {
  auto v = analyze(make(honeycomb_diamond(2), {2, 3}, "random-rational(7)"));
  REQUIRE(v.kind == VerdictKind::Irreducible);
  const auto cert = v.certificate;
  REQUIRE(replay(cert).ok);
  int tampered = 0;
  for (std::size_t i = 0; i < cert.at("facts").size(); ++i) {
    const auto& prem = cert.at("facts")[i].at("premises");
    for (std::size_t k = 0; k < prem.size(); ++k) {
      auto bad = cert;
      bad["facts"][i]["premises"].erase(k);
      CHECK_MESSAGE(!replay(bad).ok, "dropping premise " << k << " of fact " << i);
      ++tampered;
    }
    if (!prem.empty()) {
      auto gone = cert;
      auto p = prem[0].get<std::size_t>();
      auto& facts = gone["facts"];
      for (std::size_t j = 0; j < facts.size(); ++j)
        if (facts[j].at("id") == p) {
          facts.erase(j);
          break;
        }
      CHECK_FALSE(replay(gone).ok);
    }
  }
  CHECK(tampered > 0);
  auto swapped = cert;
  for (auto& f : swapped["facts"])
    if (f.at("rule") == "cor_irred") f["rule"] = "th1", f["witness"] = {{"k", 1}};
  CHECK_FALSE(replay(swapped).ok);
  auto no_target = cert;
  auto& facts = no_target["facts"];
  facts.erase(facts.size() - 1);
  CHECK_FALSE(replay(no_target).ok);
}

TEST_CASE("property: soundness battery on small numeric instances") {
  struct Case {
    PeriodicGraph g;
    std::vector<std::vector<long>> Qs;
  };
  std::vector<Case> cases{
      {honeycomb_diamond(2), {{1, 1}, {2, 1}, {1, 3}}},
      {dense_2d(), {{1, 1}, {1, 2}, {3, 1}}},
      {square_lattice(2), {{1, 1}, {2, 3}, {3, 2}, {1, 5}}},
      {cross_graph({1, 2}), {{2, 1}, {3, 1}, {1, 3}}},
      {square_lattice(1), {{2}, {3}, {5}, {6}}},
      {dice(2), {{1, 1}, {2, 1}}},
  };
  int irreducible = 0;
  std::uint64_t seed = 500;
  for (const auto& c : cases)
    for (const auto& Q : c.Qs)
      for (const char* pot : {"random-rational", "random-zd"}) {
        ++seed;
        std::string s = "(" + std::to_string(seed) + ")";
        auto in = make(c.g, Q, pot + s, "random-rational" + s);
        auto v = analyze(in);
        if (v.kind != VerdictKind::Irreducible) continue;
        ++irreducible;
        CHECK(replay(v.certificate).ok);
        auto DQ = q_expand(in.base, Q, in.potential_Q).expanded.dispersion();
        CHECK(flat_bands(DQ).empty());
        auto P = Polytope::newton(DQ);
        for (const auto& f : P.facet_records())
          CHECK_MESSAGE(!oracle::proper_power_exponent(DQ.facial(f.normal)).has_value(), c.g.name());
      }
  CHECK(irreducible >= 10);
}
