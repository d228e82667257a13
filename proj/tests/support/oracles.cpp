#include "oracles.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace oracle {

LaurentPoly permutation_det(const LaurentMatrix& m) {
  const std::size_t n = m.n;
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  LaurentPoly total(m.d);
  do {
    int inv = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) ++inv;
    LaurentPoly t = LaurentPoly::constant(m.d, bloch::ParamPoly(inv % 2 ? -1 : 1));
    for (std::size_t i = 0; i < n && !t.is_zero(); ++i) t = t * m.at(i, perm[i]);
    total += t;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

long brute_div(const std::vector<IVec>& support, int j, const std::vector<int>& sigma, int bound) {
  const std::size_t k = support.size();
  std::vector<int> zeta(k, -bound);
  long g = 0;
  const std::size_t dim = support.front().size();
  while (true) {
    IVec v(dim, 0);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t c = 0; c < dim; ++c) v[c] += zeta[i] * support[i][c];
    bool ok = true;
    for (int s : sigma)
      if (s != j && v[static_cast<std::size_t>(s - 1)] != 0) ok = false;
    if (ok) g = std::gcd(g, std::labs(v[static_cast<std::size_t>(j - 1)]));
    std::size_t p = 0;
    while (p < k && zeta[p] == bound) zeta[p++] = -bound;
    if (p == k) break;
    ++zeta[p];
  }
  return g;
}

namespace {

using UP = std::vector<mpq_class>;  // coefficient of t^i at index i

UP upow(const UP& g, int k) {
  UP r{1};
  for (int i = 0; i < k; ++i) {
    UP s(r.size() + g.size() - 1, 0);
    for (std::size_t a = 0; a < r.size(); ++a)
      for (std::size_t b = 0; b < g.size(); ++b) s[a + b] += r[a] * g[b];
    r = s;
  }
  return r;
}

bool has_root(const UP& F, int k) {
  const std::size_t n = F.size() - 1;
  if (n % static_cast<std::size_t>(k) != 0) return false;
  const std::size_t m = n / static_cast<std::size_t>(k);
  UP f(F.size());
  for (std::size_t i = 0; i < F.size(); ++i) f[i] = F[i] / F[n];
  UP g(m + 1, 0);
  g[m] = 1;
  for (std::size_t i = 1; i <= m; ++i) {
    UP p = upow(g, k);
    g[m - i] = (f[n - i] - p[n - i]) / k;
  }
  return upow(g, k) == f;
}

}  // namespace

std::optional<int> proper_power_exponent(const LaurentPoly& f) {
  if (f.is_zero() || f.is_monomial() || !f.is_numeric()) return std::nullopt;
  auto sup = f.support();
  const std::size_t D = sup.front().size();
  IVec lo = sup.front(), hi = sup.front();
  for (const auto& p : sup)
    for (std::size_t c = 0; c < D; ++c) {
      lo[c] = std::min(lo[c], p[c]);
      hi[c] = std::max(hi[c], p[c]);
    }
  long N = 1;
  for (std::size_t c = 0; c < D; ++c) N = std::max(N, hi[c] - lo[c] + 1);
  std::map<long, mpq_class> terms;
  for (const auto& p : sup) {
    long e = 0, base = 1;
    for (std::size_t c = 0; c < D; ++c) {
      e += (p[c] - lo[c]) * base;
      base *= N;
    }
    terms[e] += f.coeff(p).constant_value();
  }
  const long low = terms.begin()->first, top = terms.rbegin()->first;
  UP F(static_cast<std::size_t>(top - low + 1), 0);
  for (const auto& [e, c] : terms) F[static_cast<std::size_t>(e - low)] = c;
  for (int k = 2; k <= top - low; ++k)
    if (has_root(F, k)) return k;
  return std::nullopt;
}

namespace {

// Unique barycentric solution of sum t_i s_i = p, sum t_i = 1, or nullopt.
std::optional<std::vector<mpq_class>> barycentric(const std::vector<IVec>& s, const IVec& p) {
  const std::size_t k = s.size(), rows = p.size() + 1;
  std::vector<std::vector<mpq_class>> a(rows, std::vector<mpq_class>(k + 1));
  for (std::size_t r = 0; r < p.size(); ++r) {
    for (std::size_t i = 0; i < k; ++i) a[r][i] = s[i][r];
    a[r][k] = p[r];
  }
  for (std::size_t i = 0; i < k; ++i) a[p.size()][i] = 1;
  a[p.size()][k] = 1;
  std::size_t row = 0;
  std::vector<std::size_t> piv;
  for (std::size_t c = 0; c < k && row < rows; ++c) {
    std::size_t q = row;
    while (q < rows && a[q][c] == 0) ++q;
    if (q == rows) return std::nullopt;  // dependent columns
    std::swap(a[q], a[row]);
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == row || a[r][c] == 0) continue;
      mpq_class f = a[r][c] / a[row][c];
      for (std::size_t cc = c; cc <= k; ++cc) a[r][cc] -= f * a[row][cc];
    }
    piv.push_back(c);
    ++row;
  }
  if (piv.size() != k) return std::nullopt;
  for (std::size_t r = row; r < rows; ++r)
    if (a[r][k] != 0) return std::nullopt;
  std::vector<mpq_class> t(k);
  for (std::size_t i = 0; i < k; ++i) t[i] = a[i][k] / a[i][i];
  return t;
}

}  // namespace

bool in_convex_hull(const std::vector<IVec>& pts, const IVec& p) {
  const std::size_t n = pts.size(), maxk = std::min(n, p.size() + 1);
  for (std::size_t k = 1; k <= maxk; ++k) {
    std::vector<bool> pick(n, false);
    std::fill(pick.begin(), pick.begin() + static_cast<long>(k), true);
    do {
      std::vector<IVec> s;
      for (std::size_t i = 0; i < n; ++i)
        if (pick[i]) s.push_back(pts[i]);
      if (auto t = barycentric(s, p))
        if (std::all_of(t->begin(), t->end(), [](const mpq_class& x) { return x >= 0; })) return true;
    } while (std::prev_permutation(pick.begin(), pick.end()));
  }
  return false;
}

mpq_class Rng::rational() {
  static const long primes[] = {101, 103, 107, 109, 113, 127, 131, 137};
  long den = primes[uniform(0, 7)];
  long num = uniform(-5 * den, 5 * den);
  if (num == 0) num = 1;
  mpq_class q(num, den);
  q.canonicalize();
  return q;
}

LaurentPoly random_poly(Rng& r, int d, int terms, int zrange, int lmax) {
  LaurentPoly f(d);
  for (int t = 0; t < terms; ++t) {
    std::vector<int> z(static_cast<std::size_t>(d));
    for (auto& x : z) x = static_cast<int>(r.uniform(-zrange, zrange));
    long c = r.uniform(-9, 9);
    f += LaurentPoly::monomial(d, z, static_cast<int>(r.uniform(0, lmax)), bloch::ParamPoly(c == 0 ? 1 : c));
  }
  return f;
}

IVec random_w(Rng& r, int d, int range) {
  IVec w(static_cast<std::size_t>(d + 1));
  for (auto& x : w) x = r.uniform(-range, range);
  return w;
}

}  // namespace oracle
