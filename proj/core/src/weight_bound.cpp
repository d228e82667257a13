#include "bloch/weight_bound.hpp"

#include <algorithm>
#include <stdexcept>

namespace bloch {

long min_assignment(const std::vector<std::vector<long>>& cost) {
  const std::size_t n = cost.size();
  if (n == 0) return 0;
  // Shortest augmenting path with potentials (1-based arrays).
  const long inf = kNoAssignment;
  std::vector<long> u(n + 1, 0), v(n + 1, 0);
  std::vector<std::size_t> p(n + 1, 0), way(n + 1, 0);
  for (std::size_t i = 1; i <= n; ++i) {
    p[0] = i;
    std::size_t j0 = 0;
    std::vector<long> minv(n + 1, 2 * inf);
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      std::size_t i0 = p[j0], j1 = 0;
      long delta = 2 * inf;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        long c = std::min(cost[i0 - 1][j - 1], inf);
        long cur = c - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      std::size_t j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0);
  }
  long total = 0;
  for (std::size_t j = 1; j <= n; ++j) {
    long c = cost[p[j] - 1][j - 1];
    if (c >= inf) return inf;
    total += c;
  }
  return total;
}

WeightBound weight_bound(const LaurentMatrix& L, const IVec& w, bool with_lambda) {
  const int d = L.d;
  if (static_cast<int>(w.size()) != d + 1) throw std::invalid_argument("weight_bound: exposing vector length");
  const std::size_t n = L.n;
  std::vector<std::vector<long>> c(n, std::vector<long>(n, kNoAssignment));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      long best = kNoAssignment;
      for (const auto& t : L.at(i, j).terms()) {
        long s = w[d] * t.e[0];
        for (int k = 0; k < d; ++k) s += w[k] * t.e[k + 1];
        best = std::min(best, s);
      }
      if (i == j) {
        best = std::min(best, 0L);
        if (with_lambda) best = std::min(best, w[d]);
      }
      c[i][j] = best;
    }
  }
  WeightBound b;
  b.trop = min_assignment(c);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::vector<long>> minor;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == i) continue;
      std::vector<long> row;
      for (std::size_t s = 0; s < n; ++s)
        if (s != i) row.push_back(c[r][s]);
      minor.push_back(std::move(row));
    }
    long m = min_assignment(minor);
    if (m < kNoAssignment) b.with_constant = std::min(b.with_constant, m);
  }
  return b;
}

}  // namespace bloch
