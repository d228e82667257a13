#include "bloch/lattice.hpp"

#include <algorithm>
#include <utility>

namespace bloch {

std::size_t echelonize(ZMat& m, std::size_t ncols) {
  std::size_t row = 0;
  for (std::size_t c = 0; c < ncols && row < m.size(); ++c) {
    while (true) {
      std::size_t best = m.size();
      for (std::size_t r = row; r < m.size(); ++r) {
        if (m[r][c] == 0) continue;
        if (best == m.size() || abs(m[r][c]) < abs(m[best][c])) best = r;
      }
      if (best == m.size()) break;
      std::swap(m[row], m[best]);
      bool clean = true;
      for (std::size_t r = row + 1; r < m.size(); ++r) {
        if (m[r][c] == 0) continue;
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), m[r][c].get_mpz_t(), m[row][c].get_mpz_t());
        for (std::size_t k = c; k < m[r].size(); ++k) m[r][k] -= q * m[row][k];
        if (m[r][c] != 0) clean = false;
      }
      if (clean) break;
    }
    if (m[row][c] == 0) continue;
    if (m[row][c] < 0)
      for (auto& x : m[row]) x = -x;
    ++row;
  }
  return row;
}

std::vector<std::size_t> pivot_columns(const ZMat& e, std::size_t ncols) {
  std::vector<std::size_t> piv;
  for (const auto& r : e) {
    std::size_t c = 0;
    while (c < ncols && r[c] == 0) ++c;
    if (c == ncols) break;
    piv.push_back(c);
  }
  return piv;
}

ZMat hermite_rows(ZMat a, std::size_t ncols) {
  std::size_t r = echelonize(a, ncols);
  a.resize(r);
  auto piv = pivot_columns(a, ncols);
  for (std::size_t i = 0; i < a.size(); ++i) {
    std::size_t c = piv[i];
    for (std::size_t k = 0; k < i; ++k) {
      mpz_class q;
      mpz_fdiv_q(q.get_mpz_t(), a[k][c].get_mpz_t(), a[i][c].get_mpz_t());
      if (q == 0) continue;
      for (std::size_t j = c; j < ncols; ++j) a[k][j] -= q * a[i][j];
    }
  }
  return a;
}

ZMat integer_kernel(const ZMat& a, std::size_t ncols) {
  // Rows of [A^T | I]; reducing the A^T part leaves kernel vectors in I.
  std::size_t k = a.size();
  ZMat m(ncols, ZVec(k + ncols));
  for (std::size_t j = 0; j < ncols; ++j) {
    for (std::size_t i = 0; i < k; ++i) m[j][i] = a[i][j];
    m[j][k + j] = 1;
  }
  std::size_t r = echelonize(m, k);
  ZMat ker;
  for (std::size_t j = r; j < ncols; ++j)
    ker.emplace_back(m[j].begin() + static_cast<long>(k), m[j].end());
  return hermite_rows(ker, ncols);
}

ZMat saturate(const ZMat& a, std::size_t ncols) {
  ZMat k = integer_kernel(a, ncols);
  if (k.empty()) {
    if (rational_rank(a, ncols) == 0) return {};
    ZMat id(ncols, ZVec(ncols));
    for (std::size_t i = 0; i < ncols; ++i) id[i][i] = 1;
    return id;
  }
  return integer_kernel(k, ncols);
}

std::size_t rational_rank(const ZMat& a, std::size_t ncols) {
  ZMat m = a;
  return echelonize(m, ncols);
}

mpz_class content(const ZVec& v) {
  mpz_class g = 0;
  for (const auto& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  return g;
}

ZVec primitive(const ZVec& v) {
  mpz_class g = content(v);
  if (g == 0) return v;
  ZVec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] / g;
  return out;
}

bool solve_in_row_span(const ZMat& basis, const ZVec& target, QVec& x) {
  // Gaussian elimination on the transposed system B^T x = t.
  std::size_t r = basis.size(), n = target.size();
  std::vector<QVec> m(n, QVec(r + 1));
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < r; ++i) m[j][i] = basis[i][j];
    m[j][r] = target[j];
  }
  std::vector<std::size_t> piv;
  std::size_t row = 0;
  for (std::size_t c = 0; c < r && row < n; ++c) {
    std::size_t p = row;
    while (p < n && m[p][c] == 0) ++p;
    if (p == n) continue;
    std::swap(m[row], m[p]);
    for (std::size_t j = 0; j < n; ++j) {
      if (j == row || m[j][c] == 0) continue;
      mpq_class f = m[j][c] / m[row][c];
      for (std::size_t k = c; k <= r; ++k) m[j][k] -= f * m[row][k];
    }
    piv.push_back(c);
    ++row;
  }
  for (std::size_t j = row; j < n; ++j)
    if (m[j][r] != 0) return false;
  x.assign(r, 0);
  for (std::size_t i = 0; i < piv.size(); ++i) x[piv[i]] = m[i][r] / m[i][piv[i]];
  return true;
}

}  // namespace bloch
