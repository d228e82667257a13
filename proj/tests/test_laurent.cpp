#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bloch/numeric.hpp"
#include "bloch/periodic_graph.hpp"
#include "bloch/polytope.hpp"
#include "support/oracles.hpp"

using namespace bloch;

namespace {

LaurentPoly Z(int i, int p = 1) { return LaurentPoly::z(2, i, p); }
LaurentPoly L() { return LaurentPoly::lambda(2); }
LaurentPoly C(long c) { return LaurentPoly::constant(2, ParamPoly(c)); }
LaurentPoly S(const std::string& s) { return LaurentPoly::constant(2, ParamPoly::symbol(s)); }

LaurentPoly example_f() { return Z(1, 2) * Z(2, 2) + L() * Z(1, 4) + L() * L() * L(); }

}  // namespace

TEST_CASE("add") {
  auto f = example_f();
  CHECK(f + LaurentPoly(2) == f);
  CHECK((Z(1) + L()) + (-Z(1)) == L());
  CHECK(f.size() == 3);
  CHECK(f.to_string() == "l^3 + z1^4*l + z1^2*z2^2");
  CHECK_THROWS((Z(1) + LaurentPoly::z(3, 1)));
}

TEST_CASE("mul") {
  CHECK(example_f() * C(1) == example_f());
  auto g = Z(1) * Z(2) + Z(1) + Z(2) + C(2);
  auto sq = g * g;
  CHECK(sq.size() == 9);
  CHECK(Polytope::newton(sq) == minkowski_sum(Polytope::newton(g), Polytope::newton(g)));
  CHECK((L() - C(3)) * (L() + C(3)) == L() * L() - C(9));
}

TEST_CASE("support") {
  CHECK(LaurentPoly(2).support().empty());
  std::vector<IVec> want{{2, 2, 0}, {4, 0, 1}, {0, 0, 3}};
  std::sort(want.begin(), want.end());
  auto got = example_f().support();
  std::sort(got.begin(), got.end());
  CHECK(got == want);
}

TEST_CASE("determinant of honeycomb Floquet matrix") {
  LaurentMatrix m(2, 2);
  auto a = S("alpha"), b = S("beta"), g = S("gamma");
  auto Au = S("V_u") + a + b + g, Av = S("V_v") + a + b + g;
  m.at(0, 0) = Au - L();
  m.at(0, 1) = -(a + b * Z(1, -1) + g * Z(2, -1));
  m.at(1, 0) = -(a + b * Z(1) + g * Z(2));
  m.at(1, 1) = Av - L();
  auto D = determinant(m);
  auto hand = (Au - L()) * (Av - L()) - (a + b * Z(1, -1) + g * Z(2, -1)) * (a + b * Z(1) + g * Z(2));
  CHECK(D == hand);
  CHECK(D.size() == 9);
  CHECK(D == oracle::permutation_det(m));
  LaurentMatrix one(2, 1);
  one.at(0, 0) = example_f();
  CHECK(determinant(one) == example_f());
}

TEST_CASE("determinant: diagonal and random matrices against the permutation sum") {
  oracle::Rng r(5);
  for (std::size_t n = 1; n <= 5; ++n) {
    LaurentMatrix diag(2, n);
    LaurentPoly prod = C(1);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        diag.at(i, j) = i == j ? oracle::random_poly(r, 2, 2) : LaurentPoly(2);
        if (i == j) prod = prod * diag.at(i, i);
      }
    CHECK(determinant(diag) == prod);
    for (int rep = 0; rep < 4; ++rep) {
      LaurentMatrix m(2, n);
      for (auto& e : m.entries) e = r.uniform(0, 3) ? oracle::random_poly(r, 2, 2, 1, 1) : LaurentPoly(2);
      CHECK(determinant(m) == oracle::permutation_det(m));
    }
  }
  LaurentMatrix big(2, 17);
  CHECK_THROWS_AS(determinant(big), CapExceeded);
}

TEST_CASE("facial polynomial") {
  auto f = example_f();
  CHECK(f.facial({0, 0, 0}) == f);
  auto D = dense_2d().dispersion();
  auto F = D.facial({-1, -1, -1});
  std::vector<IVec> want{{0, 0, 2}, {2, 0, 0}, {0, 2, 0}, {1, 0, 1}, {0, 1, 1}, {1, 1, 0}};
  std::sort(want.begin(), want.end());
  auto got = F.support();
  std::sort(got.begin(), got.end());
  CHECK(got == want);
  auto H = honeycomb_diamond(2).dispersion().facial({-2, -2, -1});
  std::vector<IVec> three{{0, 0, 2}, {1, 0, 0}, {0, 1, 0}};
  std::sort(three.begin(), three.end());
  got = H.support();
  std::sort(got.begin(), got.end());
  CHECK(got == three);
}

TEST_CASE("substitute_power") {
  auto f = Z(1) + Z(2);
  CHECK(f.substitute_power({1, 1}) == f);
  CHECK(f.substitute_power({3, 2}) == Z(1, 3) + Z(2, 2));
  auto D = honeycomb_diamond(2).dispersion();
  auto D2 = D.substitute_power({2, 1});
  CHECK(D2.size() == D.size());
  for (const auto& p : D.support()) CHECK(D2.coeff({2 * p[0], p[1], p[2]}) == D.coeff(p));
}

TEST_CASE("specialize_lambda") {
  CHECK((L() * L() - C(1)).specialize_lambda(1).is_zero());
  CHECK((Z(1) + L()).specialize_lambda(0) == Z(1));
  auto g = one_vertex(2, {{{1, 0}, ParamPoly::symbol("a1")}, {{0, 1}, ParamPoly::symbol("a2")}});
  auto D0 = g.dispersion().specialize_lambda(0);
  std::vector<IVec> want{{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 0}};
  std::sort(want.begin(), want.end());
  auto got = D0.support();
  std::sort(got.begin(), got.end());
  CHECK(got == want);
}

TEST_CASE("exact_divide") {
  auto f = example_f();
  CHECK(*f.exact_divide(C(1)) == f);
  CHECK(*((L() - C(2)) * (L() + Z(1))).exact_divide(L() - C(2)) == L() + Z(1));
  CHECK_FALSE((L() + Z(1)).exact_divide(L() - C(2)).has_value());
  auto H = omega_honeycomb();
  auto DH = H.dispersion();
  auto Domega = S("V_Omega") - L();
  auto q = DH.exact_divide(Domega);
  REQUIRE(q.has_value());
  CHECK(*q == honeycomb_diamond(2).dispersion());
}

TEST_CASE("eval_numeric") {
  std::vector<std::complex<double>> z{{0.3, 0.7}, {-1.1, 0.2}};
  CHECK(C(5).eval(z, 2.0, {}) == std::complex<double>(5));
  CHECK(std::abs((Z(1) * Z(1, -1)).eval(z, 0.0, {}) - 1.0) < 1e-15);
  auto D = honeycomb_diamond(2).dispersion();
  std::map<std::string, mpq_class> p{{"alpha", 6}, {"beta", 3}, {"gamma", 2}, {"V_u", 0}, {"V_v", 0}};
  std::map<std::string, ParamPoly> pp;
  for (const auto& [k, v] : p) pp[k] = ParamPoly(v);
  auto exact = D.substitute_params(pp);
  mpq_class sum = 0;
  for (const auto& t : exact.terms())
    if (t.e[0] == 0) sum += t.c.constant_value();
  CHECK(D.eval({1.0, 1.0}, 0.0, p).real() == doctest::Approx(sum.get_d()));
  CHECK_THROWS(D.eval({1.0, 1.0}, 0.0, {}));
  CHECK_THROWS(Z(1).eval({0.0, 1.0}, 0.0, {}));
}

TEST_CASE("is_monomial and normalize_monomial_unit") {
  auto m = LaurentPoly::monomial(2, {2, -1}, 0, ParamPoly(3));
  CHECK(m.is_monomial());
  CHECK(m.normalize_monomial_unit() == C(3));
  auto xy = Z(1) + Z(2);
  CHECK_FALSE(xy.is_monomial());
  CHECK(xy.normalize_monomial_unit() == Z(1) * Z(2, -1) + C(1));
  CHECK_FALSE(honeycomb_diamond(2).dispersion().is_monomial());
}

TEST_CASE("json round trip and canonical text") {
  auto f = LaurentPoly::monomial(2, {2, -1}, 1, ParamPoly(3)) + Z(1).scaled(ParamPoly::symbol("V_u") - ParamPoly(2));
  CHECK(f.to_string() == "3*z1^2*z2^-1*l + (V_u - 2)*z1");
  CHECK(LaurentPoly::from_json(f.to_json()) == f);
  auto D = dense_2d().dispersion();
  CHECK(LaurentPoly::from_json(D.to_json()) == D);
}

TEST_CASE("ring laws on random polynomials") {
  oracle::Rng r(17);
  for (int rep = 0; rep < 60; ++rep) {
    int d = static_cast<int>(r.uniform(1, 3));
    auto f = oracle::random_poly(r, d, static_cast<int>(r.uniform(1, 8)));
    auto g = oracle::random_poly(r, d, static_cast<int>(r.uniform(1, 8)));
    auto h = oracle::random_poly(r, d, static_cast<int>(r.uniform(1, 8)));
    CHECK((f + g) + h == f + (g + h));
    CHECK(f * (g + h) == f * g + f * h);
    CHECK(f * g == g * f);
    CHECK((f * g) * h == f * (g * h));
    if (!g.is_zero()) {
      auto q = (f * g).exact_divide(g);
      REQUIRE(q.has_value());
      CHECK(*q == f);
    }
  }
}

TEST_CASE("numeric evaluation commutes with multiplication") {
  oracle::Rng r(23);
  PointSampler ps(99);
  for (int rep = 0; rep < 20; ++rep) {
    auto f = oracle::random_poly(r, 2, 6), g = oracle::random_poly(r, 2, 6);
    std::vector<std::complex<double>> z{ps.nonzero_complex(), ps.nonzero_complex()};
    auto lam = ps.nonzero_complex();
    auto a = (f * g).eval(z, lam, {}), b = f.eval(z, lam, {}) * g.eval(z, lam, {});
    CHECK(std::abs(a - b) <= 1e-9 * std::max(1.0, std::abs(b)));
  }
}

TEST_CASE("ParamPoly ring laws") {
  oracle::Rng r(29);
  const char* names[] = {"a", "b", "c"};
  auto rnd = [&] {
    ParamPoly p;
    for (int t = 0; t < 4; ++t) {
      ParamPoly m(r.rational());
      for (int k = 0; k < r.uniform(0, 2); ++k) m *= ParamPoly::symbol(names[r.uniform(0, 2)]);
      p += m;
    }
    return p;
  };
  for (int rep = 0; rep < 50; ++rep) {
    auto a = rnd(), b = rnd(), c = rnd();
    CHECK((a + b) + c == a + (b + c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a * b == b * a);
    if (!b.is_zero()) CHECK(*(a * b).divide_exact(b) == a);
  }
}
