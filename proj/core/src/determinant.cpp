#include <algorithm>
#include <bit>
#include <numeric>
#include <queue>
#include <unordered_map>

#include "bloch/laurent.hpp"

namespace bloch {

namespace {

// Reverse Cuthill-McKee on the symmetrised sparsity pattern.
std::vector<std::size_t> rcm_order(const LaurentMatrix& m) {
  const std::size_t n = m.n;
  std::vector<std::vector<std::size_t>> adj(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && (!m.at(i, j).is_zero() || !m.at(j, i).is_zero())) adj[i].push_back(j);
  std::vector<std::size_t> order;
  std::vector<bool> seen(n, false);
  while (order.size() < n) {
    std::size_t start = n;
    for (std::size_t i = 0; i < n; ++i)
      if (!seen[i] && (start == n || adj[i].size() < adj[start].size())) start = i;
    std::queue<std::size_t> q;
    q.push(start);
    seen[start] = true;
    while (!q.empty()) {
      std::size_t u = q.front();
      q.pop();
      order.push_back(u);
      std::vector<std::size_t> next;
      for (auto v : adj[u])
        if (!seen[v]) {
          seen[v] = true;
          next.push_back(v);
        }
      std::sort(next.begin(), next.end(), [&](std::size_t a, std::size_t b) {
        return adj[a].size() != adj[b].size() ? adj[a].size() < adj[b].size() : a < b;
      });
      for (auto v : next) q.push(v);
    }
  }
  std::reverse(order.begin(), order.end());
  return order;
}

struct Overflow {};

inline void add_to(__int128& a, const __int128& b) {
  if (__builtin_add_overflow(a, b, &a)) throw Overflow{};
}
inline __int128 mul(const __int128& a, const __int128& b) {
  __int128 r;
  if (__builtin_mul_overflow(a, b, &r)) throw Overflow{};
  return r;
}
inline void add_to(mpq_class& a, const mpq_class& b) { a += b; }
inline mpq_class mul(const mpq_class& a, const mpq_class& b) { return a * b; }
inline bool is_zero(const __int128& a) { return a == 0; }
inline bool is_zero(const mpq_class& a) { return a == 0; }

template <class T>
using NPoly = std::vector<std::pair<Exponent, T>>;

template <class T>
void npoly_normalize(NPoly<T>& p) {
  std::sort(p.begin(), p.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  NPoly<T> out;
  out.reserve(p.size());
  for (auto& t : p) {
    if (!out.empty() && out.back().first == t.first)
      add_to(out.back().second, t.second);
    else
      out.push_back(std::move(t));
  }
  out.erase(std::remove_if(out.begin(), out.end(), [](const auto& t) { return is_zero(t.second); }),
            out.end());
  p = std::move(out);
}

template <class T>
NPoly<T> integer_det(const std::vector<NPoly<T>>& ent, std::size_t n, const std::vector<std::size_t>& order) {
  std::unordered_map<std::uint64_t, NPoly<T>> layer;
  layer[0] = NPoly<T>{{Exponent{}, T(1)}};
  for (std::size_t r = 0; r < n; ++r) {
    std::unordered_map<std::uint64_t, NPoly<T>> next;
    const std::size_t row = order[r];
    for (const auto& [mask, p] : layer) {
      for (std::size_t c = 0; c < n; ++c) {
        if (mask >> c & 1) continue;
        const auto& e = ent[row * n + order[c]];
        if (e.empty()) continue;
        bool neg = std::popcount(mask >> (c + 1)) & 1;
        auto& acc = next[mask | (std::uint64_t{1} << c)];
        for (const auto& [ea, ca] : p)
          for (const auto& [eb, cb] : e) {
            Exponent x;
            for (std::size_t i = 0; i < x.size(); ++i) x[i] = ea[i] + eb[i];
            T v = mul(ca, cb);
            if (neg) v = -v;
            acc.emplace_back(x, std::move(v));
          }
      }
    }
    layer.clear();
    for (auto& [k, v] : next) {
      npoly_normalize(v);
      if (!v.empty()) layer.emplace(k, std::move(v));
    }
    if (layer.empty()) return {};
  }
  return layer.begin()->second;
}

// Exact determinant for matrices with rational constant coefficients. Integer
// matrices run in 128-bit arithmetic first and fall back to GMP on overflow.
LaurentPoly numeric_determinant(const LaurentMatrix& m, const std::vector<std::size_t>& order) {
  const std::size_t n = m.n;
  std::vector<NPoly<mpq_class>> big(n * n);
  bool small_ints = true;
  for (std::size_t k = 0; k < n * n; ++k)
    for (const auto& t : m.entries[k].terms()) {
      mpq_class v = t.c.constant_value();
      small_ints &= v.get_den() == 1 && v.get_num().fits_slong_p();
      big[k].emplace_back(t.e, v);
    }
  LaurentBuilder b(m.d);
  if (small_ints) {
    std::vector<NPoly<__int128>> small(n * n);
    for (std::size_t k = 0; k < n * n; ++k)
      for (const auto& [e, v] : big[k]) small[k].emplace_back(e, static_cast<__int128>(v.get_num().get_si()));
    try {
      auto res = integer_det(small, n, order);
      for (const auto& [e, v] : res) {
        bool neg = v < 0;
        unsigned __int128 u = neg ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
        mpz_class z = static_cast<unsigned long>(u >> 64);
        z <<= 64;
        z += static_cast<unsigned long>(u & ~0UL);
        b.add(e, ParamPoly(mpq_class(neg ? mpz_class(-z) : z)));
      }
      return b.finish();
    } catch (const Overflow&) {
    }
  }
  for (auto& [e, v] : integer_det(big, n, order)) b.add(e, ParamPoly(v));
  return b.finish();
}

}  // namespace

LaurentPoly determinant(const LaurentMatrix& m, std::size_t cap) {
  if (m.entries.size() != m.n * m.n) throw std::invalid_argument("matrix is not square");
  if (cap > kHardDetCap) cap = kHardDetCap;
  if (m.n > cap)
    throw CapExceeded("matrix size " + std::to_string(m.n) + " exceeds determinant cap " +
                      std::to_string(cap));
  const int d = m.d;
  if (m.n == 0) return LaurentPoly::constant(d, ParamPoly(1));
  auto order = rcm_order(m);
  const std::size_t n = m.n;
  if (std::all_of(m.entries.begin(), m.entries.end(), [](const LaurentPoly& e) { return e.is_numeric(); }))
    return numeric_determinant(m, order);

  std::unordered_map<std::uint64_t, LaurentPoly> layer{{0, LaurentPoly::constant(d, ParamPoly(1))}};
  for (std::size_t r = 0; r < n; ++r) {
    std::unordered_map<std::uint64_t, LaurentPoly> next;
    const std::size_t row = order[r];
    for (const auto& [mask, p] : layer) {
      for (std::size_t c = 0; c < n; ++c) {
        if (mask >> c & 1) continue;
        const LaurentPoly& e = m.at(row, order[c]);
        if (e.is_zero()) continue;
        LaurentPoly t = p * e;
        if (std::popcount(mask >> (c + 1)) & 1) t = -t;
        auto [it, fresh] = next.try_emplace(mask | (std::uint64_t{1} << c), d);
        it->second += t;
      }
    }
    layer.clear();
    for (auto& [k, v] : next)
      if (!v.is_zero()) layer.emplace(k, std::move(v));
    if (layer.empty()) return LaurentPoly(d);
  }
  return layer.begin()->second;
}

}  // namespace bloch
