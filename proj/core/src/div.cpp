#include "bloch/div.hpp"

#include <algorithm>
#include <stdexcept>

#include "bloch/lattice.hpp"

namespace bloch {

long div_j_sigma(const std::vector<IVec>& support, int j, const std::vector<int>& sigma) {
  if (std::find(sigma.begin(), sigma.end(), j) == sigma.end())
    throw std::invalid_argument("div_j_sigma: j must belong to sigma");
  if (support.empty()) throw std::invalid_argument("div_j_sigma: empty support");
  const std::size_t n = support.front().size();
  for (int s : sigma)
    if (s < 1 || static_cast<std::size_t>(s) >= n) throw std::invalid_argument("div_j_sigma: index out of range");

  // Columns: sigma \ {j}, then j, then everything else.
  std::vector<std::size_t> order;
  for (int s : sigma)
    if (s != j) order.push_back(static_cast<std::size_t>(s - 1));
  std::sort(order.begin(), order.end());
  order.erase(std::unique(order.begin(), order.end()), order.end());
  const std::size_t block = order.size();
  order.push_back(static_cast<std::size_t>(j - 1));
  for (std::size_t c = 0; c < n; ++c)
    if (std::find(order.begin(), order.end(), c) == order.end()) order.push_back(c);

  ZMat m;
  for (const auto& p : support) {
    ZVec row(n);
    for (std::size_t c = 0; c < n; ++c) row[c] = p[order[c]];
    m.push_back(std::move(row));
  }
  std::size_t r = echelonize(m, n);
  m.resize(r);
  auto piv = pivot_columns(m, n);
  for (std::size_t i = 0; i < piv.size(); ++i)
    if (piv[i] == block) return mpz_class(abs(m[i][block])).get_si();
  return 0;
}

long div_j_sigma(const LaurentPoly& f, int j, const std::vector<int>& sigma) {
  if (f.is_zero()) throw std::invalid_argument("div_j_sigma: zero polynomial");
  if (j < 1 || j > f.vars()) throw std::invalid_argument("div_j_sigma: j out of range");
  return div_j_sigma(f.support(), j, sigma);
}

}  // namespace bloch
