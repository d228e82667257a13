#include "bloch/polytope.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include "bloch/lattice.hpp"

namespace bloch {

namespace {

constexpr long kCoordGuard = 1L << 24;

using i128 = __int128;

long to_long(const mpz_class& z) {
  if (!z.fits_slong_p()) throw std::overflow_error("polytope coordinate overflow");
  return z.get_si();
}

long dot(const IVec& a, const IVec& b) {
  long s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// Bareiss determinant of a small integer matrix.
i128 small_det(std::vector<std::vector<i128>> m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  i128 prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t p = k + 1;
      while (p < n && m[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(m[k], m[p]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

// Normal of the hyperplane through r points of Z^r (zero vector if degenerate).
IVec hyperplane_normal(const std::vector<const IVec*>& pts, int r) {
  std::vector<std::vector<i128>> diffs;
  for (std::size_t k = 1; k < pts.size(); ++k) {
    std::vector<i128> row(r);
    for (int i = 0; i < r; ++i) row[i] = (*pts[k])[i] - (*pts[0])[i];
    diffs.push_back(row);
  }
  IVec c(r);
  long g = 0;
  for (int col = 0; col < r; ++col) {
    std::vector<std::vector<i128>> minor;
    for (const auto& row : diffs) {
      std::vector<i128> mr;
      for (int i = 0; i < r; ++i)
        if (i != col) mr.push_back(row[i]);
      minor.push_back(mr);
    }
    i128 v = small_det(minor);
    if (col % 2) v = -v;
    if (v > kCoordGuard * kCoordGuard || v < -kCoordGuard * kCoordGuard)
      throw std::overflow_error("hyperplane normal overflow");
    c[col] = static_cast<long>(v);
    g = std::gcd(g, c[col]);
  }
  if (g > 1)
    for (auto& x : c) x /= g;
  return c;
}

struct LatticeFrame {
  IVec origin;
  std::vector<IVec> basis;  // echelon rows
  std::vector<std::size_t> pivots;

  IVec coords(const IVec& p) const {
    IVec t(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) t[i] = p[i] - origin[i];
    IVec y(basis.size());
    for (std::size_t k = 0; k < basis.size(); ++k) {
      long v = t[pivots[k]];
      for (std::size_t l = 0; l < k; ++l) v -= y[l] * basis[l][pivots[k]];
      if (v % basis[k][pivots[k]] != 0) throw std::logic_error("point off the hull lattice");
      y[k] = v / basis[k][pivots[k]];
    }
    return y;
  }

  bool in_span(const IVec& p) const {
    IVec t(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) t[i] = p[i] - origin[i];
    ZMat b;
    for (const auto& row : basis) b.emplace_back(row.begin(), row.end());
    ZVec tz(t.begin(), t.end());
    QVec x;
    if (b.empty()) return std::all_of(t.begin(), t.end(), [](long v) { return v == 0; });
    return solve_in_row_span(b, tz, x);
  }
};

LatticeFrame make_frame(const std::vector<IVec>& pts) {
  LatticeFrame f;
  const std::size_t n = pts[0].size();
  f.origin = pts[0];
  ZMat diffs;
  for (const auto& p : pts) {
    ZVec row(n);
    bool nz = false;
    for (std::size_t i = 0; i < n; ++i) {
      row[i] = p[i] - f.origin[i];
      nz |= p[i] != f.origin[i];
    }
    if (nz) diffs.push_back(row);
  }
  if (diffs.empty()) return f;
  ZMat b = hermite_rows(saturate(diffs, n), n);
  auto piv = pivot_columns(b, n);
  for (std::size_t k = 0; k < piv.size(); ++k) {
    IVec row(n);
    for (std::size_t i = 0; i < n; ++i) row[i] = to_long(b[k][i]);
    f.basis.push_back(row);
  }
  f.pivots = piv;
  return f;
}

// w in ambient coordinates with w . (B^T y) proportional (positively) to c . y.
IVec ambient_normal(const LatticeFrame& f, const IVec& c) {
  const std::size_t r = f.basis.size(), n = f.origin.size();
  // Solve (B B^T) x = c, w = B^T x.
  std::vector<std::vector<mpq_class>> g(r, std::vector<mpq_class>(r + 1));
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < r; ++j) g[i][j] = dot(f.basis[i], f.basis[j]);
    g[i][r] = c[i];
  }
  for (std::size_t k = 0; k < r; ++k) {
    std::size_t p = k;
    while (g[p][k] == 0) ++p;
    std::swap(g[k], g[p]);
    for (std::size_t i = 0; i < r; ++i) {
      if (i == k || g[i][k] == 0) continue;
      mpq_class f2 = g[i][k] / g[k][k];
      for (std::size_t j = k; j <= r; ++j) g[i][j] -= f2 * g[k][j];
    }
  }
  std::vector<mpq_class> x(r), w(n, 0);
  for (std::size_t k = 0; k < r; ++k) x[k] = g[k][r] / g[k][k];
  for (std::size_t k = 0; k < r; ++k)
    for (std::size_t i = 0; i < n; ++i) w[i] += x[k] * f.basis[k][i];
  mpz_class den = 1;
  for (auto& v : w) den = lcm(den, mpz_class(v.get_den()));
  ZVec wz(n);
  for (std::size_t i = 0; i < n; ++i) wz[i] = mpz_class(w[i] * den);
  wz = primitive(wz);
  IVec out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = to_long(wz[i]);
  return out;
}

template <class F>
void for_each_subset(std::size_t n, std::size_t k, F&& fn) {
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  if (k > n) return;
  while (true) {
    fn(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

struct LocalFacet {
  IVec c;
  long h;
};

std::vector<LocalFacet> facets_of(const std::vector<IVec>& V, int r) {
  std::map<IVec, long> found;
  for_each_subset(V.size(), r, [&](const std::vector<std::size_t>& idx) {
    std::vector<const IVec*> pts;
    for (auto i : idx) pts.push_back(&V[i]);
    IVec c = hyperplane_normal(pts, r);
    if (std::all_of(c.begin(), c.end(), [](long v) { return v == 0; })) return;
    long h = dot(c, V[idx[0]]);
    bool ge = true, le = true;
    for (const auto& v : V) {
      long s = dot(c, v);
      ge &= s >= h;
      le &= s <= h;
    }
    if (ge) found.emplace(c, h);
    if (le) {
      for (auto& x : c) x = -x;
      found.emplace(c, -h);
    }
  });
  std::vector<LocalFacet> out;
  for (auto& [c, h] : found) out.push_back({c, h});
  return out;
}

// Vertices (indices into Y) of the full-dimensional hull of Y in Z^r.
std::vector<std::size_t> hull_vertices(const std::vector<IVec>& Y, int r) {
  std::vector<std::size_t> order(Y.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return Y[a] < Y[b]; });
  if (r == 0) return {order[0]};
  // Initial simplex, greedily affinely independent.
  std::vector<std::size_t> V{order[0]};
  for (auto i : order) {
    if (static_cast<int>(V.size()) == r + 1) break;
    std::vector<IVec> trial;
    for (auto v : V) trial.push_back(Y[v]);
    trial.push_back(Y[i]);
    if (affine_rank(trial) == static_cast<int>(V.size())) V.push_back(i);
  }
  std::set<std::size_t> verts(V.begin(), V.end());
  std::vector<std::size_t> cur;
  std::vector<LocalFacet> fs;
  while (true) {
    cur.assign(verts.begin(), verts.end());
    std::vector<IVec> VV;
    for (auto i : cur) VV.push_back(Y[i]);
    fs = facets_of(VV, r);
    bool grew = false;
    for (const auto& f : fs) {
      long bv = f.h;
      std::size_t best = Y.size();
      for (auto i : order) {
        long s = dot(f.c, Y[i]);
        if (s < bv) {
          bv = s;
          best = i;
        }
      }
      if (best != Y.size() && verts.insert(best).second) grew = true;
    }
    if (!grew) break;
  }
  // Drop seed points that ended up non-extreme: a vertex meets facets of full normal rank.
  std::vector<std::size_t> out;
  for (auto i : cur) {
    ZMat normals;
    for (const auto& f : fs)
      if (dot(f.c, Y[i]) == f.h) normals.emplace_back(f.c.begin(), f.c.end());
    if (static_cast<int>(rational_rank(normals, r)) == r) out.push_back(i);
  }
  return out;
}

}  // namespace

int affine_rank(const std::vector<IVec>& pts) {
  if (pts.empty()) return -1;
  const std::size_t n = pts[0].size();
  ZMat m;
  for (std::size_t k = 1; k < pts.size(); ++k) {
    ZVec row(n);
    for (std::size_t i = 0; i < n; ++i) row[i] = pts[k][i] - pts[0][i];
    m.push_back(row);
  }
  return static_cast<int>(rational_rank(m, n));
}

std::vector<IVec> Face::vertices() const {
  std::vector<IVec> out;
  for (auto i : vertex_ids) out.push_back(parent->vertices[i]);
  return out;
}

bool Face::contains_vertex(std::size_t id) const {
  return std::binary_search(vertex_ids.begin(), vertex_ids.end(), id);
}

Polytope Polytope::hull(const std::vector<IVec>& points_in) {
  if (points_in.empty()) throw std::invalid_argument("hull of an empty point set");
  const std::size_t n = points_in[0].size();
  std::vector<IVec> pts = points_in;
  for (const auto& p : pts) {
    if (p.size() != n) throw std::invalid_argument("points of different dimensions");
    for (auto x : p)
      if (x > kCoordGuard || x < -kCoordGuard) throw std::overflow_error("coordinate too large");
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

  auto data = std::make_shared<PolytopeData>();
  data->ambient = static_cast<int>(n);
  LatticeFrame frame = make_frame(pts);
  const int r = static_cast<int>(frame.basis.size());
  data->dim = r;
  std::vector<IVec> Y;
  Y.reserve(pts.size());
  for (const auto& p : pts) Y.push_back(frame.coords(p));

  auto vid = hull_vertices(Y, r);
  std::vector<IVec> V;
  for (auto i : vid) V.push_back(pts[i]);
  std::sort(V.begin(), V.end());
  data->vertices = V;
  data->origin = frame.origin;
  data->basis = frame.basis;
  data->pivots = frame.pivots;

  if (r >= 1) {
    std::vector<IVec> VY;
    for (const auto& v : V) VY.push_back(frame.coords(v));
    for (const auto& f : facets_of(VY, r)) {
      FacetRecord rec;
      rec.normal = ambient_normal(frame, f.c);
      for (std::size_t i = 0; i < V.size(); ++i)
        if (dot(f.c, VY[i]) == f.h) rec.vertex_ids.push_back(i);
      rec.offset = dot(rec.normal, V[rec.vertex_ids[0]]);
      data->facets.push_back(rec);
      data->lattice_normals.push_back(f.c);
    }
    // Deterministic facet order: by vertex id list.
    std::vector<std::size_t> ord(data->facets.size());
    std::iota(ord.begin(), ord.end(), 0);
    std::sort(ord.begin(), ord.end(), [&](auto a, auto b) {
      return data->facets[a].vertex_ids < data->facets[b].vertex_ids;
    });
    std::vector<FacetRecord> fs;
    std::vector<IVec> ln;
    for (auto i : ord) {
      fs.push_back(data->facets[i]);
      ln.push_back(data->lattice_normals[i]);
    }
    data->facets = fs;
    data->lattice_normals = ln;
  }
  Polytope P;
  P.data_ = data;
  return P;
}

Polytope Polytope::newton(const LaurentPoly& f) {
  if (f.is_zero()) throw std::invalid_argument("Newton polytope of zero");
  return hull(f.support());
}

std::vector<Face> Polytope::facets() const {
  std::vector<Face> out;
  for (const auto& f : data_->facets)
    out.push_back({data_, f.vertex_ids, f.normal, data_->dim - 1});
  return out;
}

Face Polytope::face_exposed(const IVec& w) const {
  if (static_cast<int>(w.size()) != ambient()) throw std::invalid_argument("exposing vector length");
  long best = dot(w, data_->vertices[0]);
  for (const auto& v : data_->vertices) best = std::min(best, dot(w, v));
  Face F{data_, {}, w, -1};
  std::vector<IVec> pts;
  for (std::size_t i = 0; i < data_->vertices.size(); ++i)
    if (dot(w, data_->vertices[i]) == best) {
      F.vertex_ids.push_back(i);
      pts.push_back(data_->vertices[i]);
    }
  F.dim = affine_rank(pts);
  return F;
}

Face Polytope::whole() const { return face_exposed(IVec(ambient(), 0)); }

std::optional<std::size_t> Polytope::vertex_index(const IVec& v) const {
  auto it = std::lower_bound(data_->vertices.begin(), data_->vertices.end(), v);
  if (it == data_->vertices.end() || *it != v) return std::nullopt;
  return static_cast<std::size_t>(it - data_->vertices.begin());
}

bool Polytope::contains(const IVec& p) const {
  if (static_cast<int>(p.size()) != ambient()) return false;
  LatticeFrame f{data_->origin, data_->basis, data_->pivots};
  if (!f.in_span(p)) return false;
  if (data_->dim == 0) return p == data_->vertices[0];
  for (const auto& fr : data_->facets)
    if (dot(fr.normal, p) < fr.offset) return false;
  return true;
}

bool Polytope::contains(const Polytope& other) const {
  for (const auto& v : other.vertices())
    if (!contains(v)) return false;
  return true;
}

nlohmann::json Polytope::to_json() const {
  nlohmann::json fs = nlohmann::json::array();
  for (const auto& f : data_->facets) fs.push_back({{"normal", f.normal}, {"vertex_ids", f.vertex_ids}});
  return {{"dim", data_->dim}, {"vertices", data_->vertices}, {"facets", fs}};
}

std::string Polytope::to_off(std::vector<int> coords) const {
  const int n = ambient();
  if (coords.empty()) {
    for (int i = 0; i < n && coords.size() < 3; ++i) coords.push_back(i);
  }
  std::vector<IVec> proj;
  for (const auto& v : data_->vertices) {
    IVec p;
    for (int c : coords) p.push_back(v.at(c));
    while (p.size() < 3) p.push_back(0);
    proj.push_back(p);
  }
  Polytope H = hull(proj);
  const auto& V = H.vertices();
  std::vector<std::vector<std::size_t>> faces;
  auto centroid = [&](const std::vector<std::size_t>& ids) {
    std::array<double, 3> c{0, 0, 0};
    for (auto i : ids)
      for (int k = 0; k < 3; ++k) c[k] += static_cast<double>(V[i][k]) / ids.size();
    return c;
  };
  auto by_angle = [&](std::vector<std::size_t> ids, const std::array<double, 3>& nrm) {
    auto c = centroid(ids);
    // Orthonormal frame in the face plane.
    std::array<double, 3> u{V[ids[0]][0] - c[0], V[ids[0]][1] - c[1], V[ids[0]][2] - c[2]};
    std::array<double, 3> w{nrm[1] * u[2] - nrm[2] * u[1], nrm[2] * u[0] - nrm[0] * u[2],
                            nrm[0] * u[1] - nrm[1] * u[0]};
    std::vector<std::pair<double, std::size_t>> a;
    for (auto i : ids) {
      double x = 0, y = 0;
      for (int k = 0; k < 3; ++k) {
        x += (V[i][k] - c[k]) * u[k];
        y += (V[i][k] - c[k]) * w[k];
      }
      a.emplace_back(std::atan2(y, x), i);
    }
    std::sort(a.begin(), a.end());
    std::vector<std::size_t> out;
    for (auto& [ang, i] : a) out.push_back(i);
    return out;
  };
  if (H.dim() == 3) {
    for (const auto& f : H.facet_records()) {
      std::array<double, 3> nrm{-(double)f.normal[0], -(double)f.normal[1], -(double)f.normal[2]};
      faces.push_back(by_angle(f.vertex_ids, nrm));
    }
  } else if (H.dim() == 2) {
    std::vector<std::size_t> ids(V.size());
    std::iota(ids.begin(), ids.end(), 0);
    std::array<double, 3> e1{double(V[1][0] - V[0][0]), double(V[1][1] - V[0][1]),
                             double(V[1][2] - V[0][2])};
    std::array<double, 3> e2{double(V[2][0] - V[0][0]), double(V[2][1] - V[0][1]),
                             double(V[2][2] - V[0][2])};
    std::array<double, 3> nrm{e1[1] * e2[2] - e1[2] * e2[1], e1[2] * e2[0] - e1[0] * e2[2],
                              e1[0] * e2[1] - e1[1] * e2[0]};
    faces.push_back(by_angle(ids, nrm));
  }
  std::ostringstream os;
  os << "OFF\n" << V.size() << " " << faces.size() << " 0\n";
  for (const auto& v : V) os << v[0] << " " << v[1] << " " << v[2] << "\n";
  for (const auto& f : faces) {
    os << f.size();
    for (auto i : f) os << " " << i;
    os << "\n";
  }
  return os.str();
}

int face_intersection_dim(const Face& a, const Face& b) {
  if (a.parent != b.parent) throw std::invalid_argument("faces of different polytopes");
  std::vector<std::size_t> common;
  std::set_intersection(a.vertex_ids.begin(), a.vertex_ids.end(), b.vertex_ids.begin(),
                        b.vertex_ids.end(), std::back_inserter(common));
  std::vector<IVec> pts;
  for (auto i : common) pts.push_back(a.parent->vertices[i]);
  return affine_rank(pts);
}

std::optional<std::vector<std::size_t>> strong_chain(const Polytope& P,
                                                     const std::vector<Face>& certified,
                                                     std::size_t a, std::size_t b) {
  (void)P;
  const std::size_t k = certified.size();
  std::vector<long> prev(k, -2);
  std::deque<std::size_t> q;
  for (std::size_t i = 0; i < k; ++i)
    if (certified[i].contains_vertex(a)) {
      prev[i] = -1;
      q.push_back(i);
    }
  while (!q.empty()) {
    std::size_t u = q.front();
    q.pop_front();
    if (certified[u].contains_vertex(b)) {
      std::vector<std::size_t> chain;
      for (long x = static_cast<long>(u); x != -1; x = prev[x]) chain.push_back(x);
      std::reverse(chain.begin(), chain.end());
      return chain;
    }
    for (std::size_t v = 0; v < k; ++v)
      if (prev[v] == -2 && face_intersection_dim(certified[u], certified[v]) >= 1) {
        prev[v] = static_cast<long>(u);
        q.push_back(v);
      }
  }
  return std::nullopt;
}

Polytope minkowski_sum(const Polytope& P, const Polytope& K) {
  if (P.ambient() != K.ambient()) throw std::invalid_argument("Minkowski sum dimension mismatch");
  std::vector<IVec> pts;
  for (const auto& p : P.vertices())
    for (const auto& k : K.vertices()) {
      IVec s(p.size());
      for (std::size_t i = 0; i < p.size(); ++i) s[i] = p[i] + k[i];
      pts.push_back(s);
    }
  return Polytope::hull(pts);
}

std::optional<Homothety> homothety_of(const Polytope& K, const Polytope& P) {
  if (K.ambient() != P.ambient()) return std::nullopt;
  const int n = K.ambient();
  auto box = [n](const Polytope& X) {
    IVec lo = X.vertices()[0], hi = X.vertices()[0];
    for (const auto& v : X.vertices())
      for (int i = 0; i < n; ++i) {
        lo[i] = std::min(lo[i], v[i]);
        hi[i] = std::max(hi[i], v[i]);
      }
    return std::make_pair(lo, hi);
  };
  auto [klo, khi] = box(K);
  auto [plo, phi] = box(P);
  Homothety h;
  if (K.dim() == 0 || P.dim() == 0) {
    if (K.dim() != 0) return std::nullopt;
    h.r = 0;
    for (int i = 0; i < n; ++i) h.a.emplace_back(klo[i]);
    return h;
  }
  bool have = false;
  for (int i = 0; i < n; ++i) {
    long wp = phi[i] - plo[i], wk = khi[i] - klo[i];
    if (wp == 0) {
      if (wk != 0) return std::nullopt;
      continue;
    }
    mpq_class r(wk, wp);
    r.canonicalize();
    if (!have) {
      h.r = r;
      have = true;
    } else if (r != h.r) {
      return std::nullopt;
    }
  }
  for (int i = 0; i < n; ++i) h.a.push_back(mpq_class(klo[i]) - h.r * plo[i]);
  std::vector<std::vector<mpq_class>> img, kv;
  for (const auto& v : P.vertices()) {
    std::vector<mpq_class> x(n);
    for (int i = 0; i < n; ++i) x[i] = h.r * v[i] + h.a[i];
    img.push_back(x);
  }
  for (const auto& v : K.vertices()) kv.emplace_back(v.begin(), v.end());
  std::sort(img.begin(), img.end());
  std::sort(kv.begin(), kv.end());
  if (img != kv) return std::nullopt;
  return h;
}

std::optional<PyramidInfo> pyramid_with_apex(const Polytope& P, std::size_t apex) {
  if (P.dim() < 1) return std::nullopt;
  const auto& V = P.vertices();
  std::vector<IVec> base;
  std::vector<std::size_t> ids;
  for (std::size_t i = 0; i < V.size(); ++i)
    if (i != apex) {
      base.push_back(V[i]);
      ids.push_back(i);
    }
  if (affine_rank(base) != P.dim() - 1) return std::nullopt;
  // The base must be a facet; its lattice normal gives the height.
  for (std::size_t f = 0; f < P.facet_records().size(); ++f) {
    const auto& rec = P.facet_records()[f];
    if (rec.vertex_ids != ids) continue;
    const auto& d = *P.data();
    LatticeFrame fr{d.origin, d.basis, d.pivots};
    IVec ya = fr.coords(V[apex]), yb = fr.coords(V[ids[0]]);
    const IVec& c = d.lattice_normals[f];
    return PyramidInfo{apex, ids, std::labs(dot(c, ya) - dot(c, yb))};
  }
  return std::nullopt;
}

std::vector<PyramidInfo> pyramids(const Polytope& P) {
  std::vector<PyramidInfo> out;
  if (P.dim() < 1) return out;
  for (std::size_t i = 0; i < P.vertices().size(); ++i)
    if (auto p = pyramid_with_apex(P, i)) out.push_back(*p);
  return out;
}

std::optional<std::vector<long>> cross_polytope_dilation(const Polytope& P) {
  const auto& V = P.vertices();
  const int n = P.ambient();
  if (P.dim() < 1 || V.size() != static_cast<std::size_t>(2 * P.dim())) return std::nullopt;
  std::vector<mpq_class> c(n, 0);
  for (const auto& v : V)
    for (int i = 0; i < n; ++i) c[i] += v[i];
  for (auto& x : c) x /= static_cast<long>(V.size());
  std::vector<long> A(n, 0);
  std::vector<int> seen(n, 0);
  for (const auto& v : V) {
    int axis = -1;
    mpq_class val;
    for (int i = 0; i < n; ++i) {
      mpq_class x = v[i] - c[i];
      if (x != 0) {
        if (axis != -1) return std::nullopt;
        axis = i;
        val = x;
      }
    }
    if (axis == -1 || val.get_den() != 1) return std::nullopt;
    long a = std::labs(val.get_num().get_si());
    if (A[axis] != 0 && A[axis] != a) return std::nullopt;
    A[axis] = a;
    seen[axis] += val > 0 ? 1 : 2;
  }
  int axes = 0;
  for (int i = 0; i < n; ++i) {
    if (seen[i] == 0) continue;
    if (seen[i] != 3) return std::nullopt;
    ++axes;
  }
  if (axes != P.dim()) return std::nullopt;
  return A;
}

Polytope contracted_dilation(const Polytope& P, const std::vector<long>& Q) {
  const int d = static_cast<int>(Q.size());
  if (P.ambient() != d + 1) throw std::invalid_argument("contracted dilation needs d+1 coordinates");
  long N = 1;
  for (auto q : Q) {
    if (q <= 0) throw std::invalid_argument("Q must be positive");
    N *= q;
  }
  std::vector<IVec> img;
  for (const auto& v : P.vertices()) {
    IVec w(d + 1);
    for (int i = 0; i < d; ++i) w[i] = v[i] * (N / Q[i]);
    w[d] = v[d] * N;
    img.push_back(w);
  }
  return Polytope::hull(img);
}

IVec exposing_vector_map(const IVec& w, const std::vector<long>& Q) {
  const std::size_t d = Q.size();
  if (w.size() != d + 1) throw std::invalid_argument("exposing vector length");
  IVec out(w);
  for (std::size_t i = 0; i < d; ++i) out[i] = w[i] * Q[i];
  return out;
}

}  // namespace bloch
