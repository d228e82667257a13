#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "bloch/numeric.hpp"
#include "bloch/periodic_graph.hpp"
#include "bloch/polytope.hpp"
#include "support/oracles.hpp"

using namespace bloch;

namespace {

LaurentPoly Z(int d, int i, int p = 1) { return LaurentPoly::z(d, i, p); }
LaurentPoly S(int d, const std::string& s) { return LaurentPoly::constant(d, ParamPoly::symbol(s)); }
LaurentPoly C(int d, long c) { return LaurentPoly::constant(d, ParamPoly(c)); }

// Random rational values for every symbol of g.
Params random_params(const PeriodicGraph& g, std::uint64_t seed) {
  Params p;
  std::uint64_t st = seed;
  for (const auto& [k, v] : labels_from_spec(g, "random-rational(" + std::to_string(seed) + ")"))
    p[k] = v.constant_value();
  for (const auto& s : g.potential_symbols()) p[s] = random_rational(st);
  return p;
}

long lambda_degree(const LaurentPoly& f) {
  long m = 0;
  for (const auto& t : f.terms()) m = std::max<long>(m, t.e[0]);
  return m;
}

std::vector<std::vector<long>> small_qs(int d) {
  if (d == 1) return {{1}, {2}, {3}, {4}, {6}};
  return {{1, 1}, {2, 1}, {1, 2}, {3, 1}, {2, 2}, {3, 2}, {1, 6}};
}

std::vector<PeriodicGraph> small_families() {
  return {honeycomb_diamond(2), dice(2), dense_2d(), square_lattice(2), square_lattice(1),
          cross_graph({2, 1}), line_graph(2), omega_honeycomb(),
          one_vertex(2, {{{1, 1}, ParamPoly::symbol("a1")}, {{0, 1}, ParamPoly::symbol("a2")}})};
}

}  // namespace

TEST_CASE("validate") {
  CHECK(honeycomb_diamond(2).validate().empty());
  PeriodicGraph g("g", 2);
  g.add_vertex("u", ParamPoly(0));
  g.add_vertex("v", ParamPoly(0));
  g.add_edge(0, 1, {0, 0}, ParamPoly(1));
  g.add_edge(1, 0, {0, 0}, ParamPoly(1));
  auto diag = g.validate();
  REQUIRE(diag.size() == 1);
  CHECK(diag[0].find("duplicate") != std::string::npos);
  PeriodicGraph h("h", 1);
  h.add_vertex("u", ParamPoly(0));
  h.add_edge(0, 0, {1}, std::nullopt);
  h.add_edge(0, 0, {0}, ParamPoly(2));
  diag = h.validate();
  CHECK(diag.size() == 2);
  CHECK_THROWS_AS(h.require_valid(), std::invalid_argument);
}

TEST_CASE("Floquet matrices of the families") {
  auto one = isolated_vertex(2, "w").floquet_matrix();
  REQUIRE(one.n == 1);
  CHECK(one.at(0, 0) == S(2, "V_w") - LaurentPoly::lambda(2));

  auto hm = honeycomb_diamond(2).floquet_matrix_no_lambda();
  auto a = S(2, "alpha"), b = S(2, "beta"), g = S(2, "gamma");
  CHECK(hm.at(0, 0) == S(2, "V_u") + a + b + g);
  CHECK(hm.at(0, 1) == -(a + b * Z(2, 1, -1) + g * Z(2, 2, -1)));
  CHECK(hm.at(1, 0) == -(a + b * Z(2, 1) + g * Z(2, 2)));
  CHECK(hm.at(1, 1) == S(2, "V_v") + a + b + g);

  auto dm = dense_2d().floquet_matrix();
  auto s = [](const std::string& n) { return S(2, n); };
  auto lam = LaurentPoly::lambda(2);
  auto two = [](int i) { return C(2, 2) - Z(2, i) - Z(2, i, -1); };
  CHECK(dm.at(0, 0) == s("alpha") + s("beta1") * two(1) + s("beta2") + s("beta3") + s("gamma1") * two(2) +
                           s("gamma2") + s("gamma3") + s("V_1") - lam);
  CHECK(dm.at(0, 1) == -s("alpha") - s("beta2") * Z(2, 1) - s("beta3") * Z(2, 1, -1) - s("gamma2") * Z(2, 2) -
                           s("gamma3") * Z(2, 2, -1));
  CHECK(dm.at(1, 0) == -s("alpha") - s("beta2") * Z(2, 1, -1) - s("beta3") * Z(2, 1) - s("gamma2") * Z(2, 2, -1) -
                           s("gamma3") * Z(2, 2));
  CHECK(dm.at(1, 1) == s("alpha") + s("beta4") * two(1) + s("beta2") + s("beta3") + s("gamma4") * two(2) +
                           s("gamma2") + s("gamma3") + s("V_2") - lam);

  auto d3 = dense_3d().floquet_matrix();
  auto t = [](const std::string& n) { return S(3, n); };
  CHECK(d3.at(0, 1) == -t("alpha") - t("beta2") * Z(3, 1) - t("beta3") * Z(3, 1, -1) - t("gamma2") * Z(3, 2) -
                           t("gamma3") * Z(3, 2, -1) - t("epsilon2") * Z(3, 3) - t("epsilon3") * Z(3, 3, -1));

  auto xm = dice(2).floquet_matrix();
  auto gsum = s("gamma0") + s("gamma1") + s("gamma2"), bsum = s("beta0") + s("beta1") + s("beta2");
  CHECK(xm.at(0, 0) == gsum + s("V_u1") - lam);
  CHECK(xm.at(0, 1) == -s("gamma0") - s("gamma1") * Z(2, 1, -1) - s("gamma2") * Z(2, 2, -1));
  CHECK(xm.at(0, 2).is_zero());
  CHECK(xm.at(1, 1) == gsum + bsum + s("V_u2") - lam);
  CHECK(xm.at(2, 1) == -s("beta0") - s("beta1") * Z(2, 1) - s("beta2") * Z(2, 2));
  CHECK(xm.at(2, 2) == bsum + s("V_u3") - lam);
}

TEST_CASE("dispersion") {
  auto sq = square_lattice(2);
  auto D = sq.dispersion();
  auto P = Polytope::newton(D);
  auto lam = *P.vertex_index({0, 0, 1});
  auto py = pyramid_with_apex(P, lam);
  REQUIRE(py.has_value());
  CHECK(py->height == 1);
  CHECK(honeycomb_diamond(2).dispersion().size() == 9);
  auto H = omega_honeycomb();
  CHECK(H.dispersion() == honeycomb_diamond(2).dispersion() * (S(2, "V_Omega") - LaurentPoly::lambda(2)));
  auto U = disjoint_union(dense_2d(), isolated_vertex(2));
  auto q = U.dispersion().exact_divide(dense_2d().dispersion());
  REQUIRE(q.has_value());
  CHECK(*q == isolated_vertex(2).dispersion());
}

TEST_CASE("q_expand") {
  auto hc = honeycomb_diamond(2);
  auto same = q_expand(hc, {1, 1});
  CHECK(same.expanded.dispersion() == hc.dispersion());
  CHECK(q_expand(hc, {3, 2}).expanded.size() == 12);
  CHECK(q_expand(dice(2), {2, 2}).expanded.size() == 12);

  std::vector<ParamPoly> vq{ParamPoly::symbol("P0"), ParamPoly::symbol("P1"), ParamPoly::symbol("P2"),
                            ParamPoly::symbol("P3")};
  auto qe = q_expand(hc, {2, 1}, vq);
  auto m = qe.expanded.floquet_matrix_no_lambda();
  REQUIRE(m.n == 4);
  auto s = [](const std::string& n) { return S(2, n); };
  auto x = [](int p) { return Z(2, 1, p); };
  auto y = [](int p) { return Z(2, 2, p); };
  auto abg = s("alpha") + s("beta") + s("gamma");
  LaurentPoly zero(2);
  std::vector<std::vector<LaurentPoly>> want{
      {s("P0") + abg, -s("alpha") - s("gamma") * y(-1), zero, -s("beta") * x(-1)},
      {-s("alpha") - s("gamma") * y(1), s("P1") + abg, -s("beta"), zero},
      {zero, -s("beta"), s("P2") + abg, -s("alpha") - s("gamma") * y(-1)},
      {-s("beta") * x(1), zero, -s("alpha") - s("gamma") * y(1), s("P3") + abg}};
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) CHECK(m.at(i, j) == want[i][j]);
  CHECK_FALSE(qe.potential_zd_periodic());
  CHECK_THROWS(q_expand(hc, {2, 1}, {ParamPoly(1)}));
  CHECK_THROWS(q_expand(hc, {0, 1}));
}

TEST_CASE("degree and leading coefficient of D_Q") {
  for (const auto& g : small_families()) {
    for (const auto& Q : small_qs(g.d())) {
      const long n = order_of(Q) * static_cast<long>(g.size());
      if (n > 8) continue;
      auto DQ = q_expand(g, Q).dispersion();
      CHECK(lambda_degree(DQ) == n);
      IVec top(static_cast<std::size_t>(g.d() + 1), 0);
      top.back() = n;
      CHECK(DQ.coeff(top) == ParamPoly(n % 2 ? -1 : 1));
    }
  }
}

TEST_CASE("hat potential") {
  auto hc = honeycomb_diamond(2);
  std::vector<ParamPoly> vq{ParamPoly(3), ParamPoly(-1), ParamPoly(7), ParamPoly(5)};
  auto qe = q_expand(hc, {2, 1}, vq);
  Params p{{"alpha", 6}, {"beta", 3}, {"gamma", 2}};
  auto t = hat_potential(qe, p);
  CHECK(std::abs(t[0][0][0] - 5.0) < 1e-12);
  CHECK(std::abs(t[1][1][1] - 2.0) < 1e-12);
  CHECK(std::abs(std::abs(t[0][1][0]) - 2.0) < 1e-12);
  CHECK(std::abs(std::abs(t[1][0][1]) - 3.0) < 1e-12);
  auto chk = hat_identity(qe, p, 20, 3);
  CHECK(chk.max_rel_err < 1e-9);

  auto zd = q_expand(hc, {3, 2});
  p["V_u"] = 4;
  p["V_v"] = mpq_class(-1, 3);
  auto tz = hat_potential(zd, p);
  for (std::size_t a = 0; a < tz.size(); ++a)
    for (std::size_t b = 0; b < tz.size(); ++b) {
      cplx want0 = a == b ? 4.0 : 0.0, want1 = a == b ? -1.0 / 3 : 0.0;
      CHECK(std::abs(tz[a][b][0] - want0) < 1e-12);
      CHECK(std::abs(tz[a][b][1] - want1) < 1e-12);
    }
}

TEST_CASE("property: product identity for Z^d-periodic potentials") {
  std::uint64_t seed = 1;
  for (const auto& g : small_families())
    for (const auto& Q : small_qs(g.d())) {
      auto qe = q_expand(g, Q);
      auto chk = product_identity(qe, random_params(g, ++seed), 20, seed);
      CHECK(chk.applicable);
      CHECK_MESSAGE(chk.max_rel_err <= 1e-9, g.name() << " Q size " << order_of(Q));
    }
}

TEST_CASE("property: hat identity with QZ-periodic potentials") {
  std::uint64_t seed = 100;
  for (const auto& g : {honeycomb_diamond(2), dice(2), dense_2d()})
    for (const auto& Q : std::vector<std::vector<long>>{{2, 1}, {2, 2}, {3, 1}}) {
      auto qe = q_expand(g, Q, potential_from_spec(g, Q, "random-rational(" + std::to_string(++seed) + ")"));
      auto chk = hat_identity(qe, random_params(g, seed), 10, seed);
      CHECK(chk.max_rel_err <= 1e-9);
    }
}

TEST_CASE("property: Lemma identity for A | Q") {
  struct Case {
    PeriodicGraph g;
    std::vector<long> A, Q;
  };
  std::vector<Case> cases{{honeycomb_diamond(2), {2, 1}, {4, 1}},
                          {honeycomb_diamond(2), {1, 2}, {2, 2}},
                          {dense_2d(), {2, 1}, {2, 2}},
                          {square_lattice(1), {2}, {6}},
                          {dice(2), {1, 1}, {2, 1}}};
  std::uint64_t seed = 200;
  for (const auto& c : cases) {
    auto vA = potential_from_spec(c.g, c.A, "random-rational(" + std::to_string(++seed) + ")");
    auto chk = lemma_red_identity(c.g, c.A, c.Q, vA, random_params(c.g, seed), 20, seed);
    CHECK(chk.max_rel_err <= 1e-9);
  }
}

TEST_CASE("property: L(z) is Hermitian on the torus") {
  std::uint64_t seed = 300;
  for (const auto& g : small_families()) CHECK(hermitian_defect(g, random_params(g, ++seed), 20, seed) <= 1e-12);
}

TEST_CASE("property: contracted dilation equals newt(D_Q)") {
  std::uint64_t seed = 400;
  for (const auto& g : small_families()) {
    auto params = random_params(g, ++seed);
    auto bound = bind_params(g, params);
    auto N = Polytope::newton(bound.dispersion());
    for (const auto& Q : small_qs(g.d())) {
      if (order_of(Q) * static_cast<long>(g.size()) > 12) continue;
      auto DQ = bind_params(q_expand(g, Q).expanded, params).dispersion();
      CHECK_MESSAGE(contracted_dilation(N, Q) == Polytope::newton(DQ), g.name());
    }
  }
}

TEST_CASE("spectrum sampling") {
  auto one = isolated_vertex(2);
  auto s1 = sample_spectrum(one, {{"V_w", 5}}, 3);
  CHECK(s1.size() == 9);
  for (const auto& s : s1) CHECK(s.eigenvalues == std::vector<double>{5.0});

  auto hc = honeycomb_diamond(2);
  Params p{{"alpha", 6}, {"beta", 3}, {"gamma", 2}, {"V_u", 0}, {"V_v", 0}};
  auto D = hc.dispersion();
  auto grid = sample_spectrum(hc, p, 8);
  CHECK(grid.size() == 64);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto& s = grid[i];
    CHECK(s.grid_index == i);
    REQUIRE(s.eigenvalues.size() == 2);
    CHECK(s.eigenvalues[0] <= s.eigenvalues[1]);
    std::vector<cplx> z;
    for (double th : s.theta) z.push_back(std::polar(1.0, 2 * M_PI * th));
    for (double e : s.eigenvalues) CHECK(std::abs(D.eval(z, e, p)) < 1e-8);
  }
  CHECK(std::abs(grid[0].eigenvalues[0]) < 1e-12);
  CHECK(std::abs(grid[0].eigenvalues[1] - 22.0) < 1e-9);
  auto fine = sample_spectrum(hc, p, 16);
  double lo8 = 1e9, lo16 = 1e9, hi8 = -1e9, hi16 = -1e9;
  for (const auto& s : grid) lo8 = std::min(lo8, s.eigenvalues[1]), hi8 = std::max(hi8, s.eigenvalues[0]);
  for (const auto& s : fine) lo16 = std::min(lo16, s.eigenvalues[1]), hi16 = std::max(hi16, s.eigenvalues[0]);
  CHECK(hi16 >= hi8 - 1e-12);
  CHECK(lo16 <= lo8 + 1e-12);
  CHECK(hi16 < lo16);

  auto U = disjoint_union(hc, isolated_vertex(2, "Omega"));
  p["V_Omega"] = 3;
  for (const auto& s : sample_spectrum(U, p, 4))
    CHECK(std::any_of(s.eigenvalues.begin(), s.eigenvalues.end(), [](double e) { return std::abs(e - 3) < 1e-9; }));
}

TEST_CASE("graph json round trip") {
  for (const auto& g : small_families()) {
    auto back = graph_from_json(graph_to_json(g));
    CHECK(back.dispersion() == g.dispersion());
  }
  CHECK_THROWS(graph_from_json(nlohmann::json::parse(R"({"d":1,"vertices":["u"],"edges":[{"u":"u","v":"x","offset":[1],"label":"c"}]})")));
}

TEST_CASE("honeycomb band ranges are stable under grid refinement") {
  auto hc = honeycomb_diamond(2);
  Params p{{"alpha", 6}, {"beta", 3}, {"gamma", 2}, {"V_u", 0}, {"V_v", 0}};
  auto ranges = [&](int n) {
    std::vector<double> r{1e9, -1e9, 1e9, -1e9};
    for (const auto& s : sample_spectrum(hc, p, n))
      for (std::size_t k = 0; k < 2; ++k) {
        r[2 * k] = std::min(r[2 * k], s.eigenvalues[k]);
        r[2 * k + 1] = std::max(r[2 * k + 1], s.eigenvalues[k]);
      }
    return r;
  };
  auto coarse = ranges(64), fine = ranges(256);
  for (std::size_t i = 0; i < 4; ++i) CHECK(std::abs(coarse[i] - fine[i]) < 1e-3);
}
