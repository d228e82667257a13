#include "bloch/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace bloch {

namespace {

std::uint64_t splitmix(std::uint64_t& s) {
  std::uint64_t z = (s += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double rel_err(cplx a, cplx b) {
  double s = std::max({std::abs(a), std::abs(b), 1e-300});
  return std::abs(a - b) / s;
}

std::vector<cplx> times(const std::vector<cplx>& z, const std::vector<cplx>& mu) {
  std::vector<cplx> r(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) r[i] = z[i] * mu[i];
  return r;
}

std::vector<cplx> power(const std::vector<cplx>& z, const std::vector<long>& Q) {
  std::vector<cplx> r(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) {
    r[i] = 1.0;
    for (long k = 0; k < Q[i]; ++k) r[i] *= z[i];
  }
  return r;
}

}  // namespace

PeriodicGraph bind_params(const PeriodicGraph& g, const Params& params) {
  std::map<std::string, ParamPoly> vals;
  for (const auto& [k, v] : params) vals[k] = ParamPoly(v);
  PeriodicGraph h = g.with_label_values(vals);
  std::vector<ParamPoly> pot;
  for (const auto& p : h.potential()) pot.push_back(p ? p->substitute(vals) : ParamPoly());
  return h.with_potential(pot);
}

double PointSampler::uniform() { return static_cast<double>(splitmix(state_) >> 11) * 0x1.0p-53; }

cplx PointSampler::nonzero_complex() {
  double r = std::exp2(2 * uniform() - 1);
  return std::polar(r, 2 * std::numbers::pi * uniform());
}

cplx PointSampler::on_circle() { return std::polar(1.0, 2 * std::numbers::pi * uniform()); }

CMatrix evaluate(const LaurentMatrix& m, const std::vector<cplx>& z, cplx lambda, const Params& params) {
  CMatrix c(m.n);
  for (std::size_t i = 0; i < m.n; ++i)
    for (std::size_t j = 0; j < m.n; ++j)
      if (!m.at(i, j).is_zero()) c(i, j) = m.at(i, j).eval(z, lambda, params);
  return c;
}

cplx det(CMatrix m) {
  const std::size_t n = m.n;
  cplx d = 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(m(i, k)) > std::abs(m(p, k))) p = i;
    if (m(p, k) == cplx(0.0)) return 0.0;
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(p, j), m(k, j));
      d = -d;
    }
    d *= m(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      cplx f = m(i, k) / m(k, k);
      if (f == cplx(0.0)) continue;
      for (std::size_t j = k; j < n; ++j) m(i, j) -= f * m(k, j);
    }
  }
  return d;
}

std::vector<std::vector<cplx>> roots_of_unity(const std::vector<long>& Q) {
  std::vector<std::vector<cplx>> out;
  for (const auto& k : cells(Q)) {
    std::vector<cplx> mu(Q.size());
    for (std::size_t i = 0; i < Q.size(); ++i)
      mu[i] = std::polar(1.0, 2 * std::numbers::pi * static_cast<double>(k[i]) / Q[i]);
    out.push_back(mu);
  }
  return out;
}

IdentityCheck product_identity(const QExpansion& qe, const Params& params, int points,
                               std::uint64_t seed, std::size_t cap) {
  IdentityCheck r;
  if (!qe.potential_zd_periodic()) {
    r.applicable = false;
    r.note = "n/a (potential not Z^d-periodic)";
    return r;
  }
  // Left side straight from the expanded Floquet matrix; right side from the exact D.
  const LaurentMatrix LQ = bind_params(qe.expanded, params).floquet_matrix();
  LaurentPoly D = bind_params(qe.base_with_periodic_potential(), params).dispersion(cap);
  NumericPoly nd(D, {});
  auto mus = roots_of_unity(qe.Q);
  PointSampler ps(seed);
  const int d = qe.base.d();
  for (int t = 0; t < points; ++t) {
    std::vector<cplx> z(d);
    for (auto& x : z) x = ps.nonzero_complex();
    cplx lam = ps.nonzero_complex() * 4.0;
    cplx lhs = det(evaluate(LQ, power(z, qe.Q), lam, {})), rhs = 1.0;
    for (const auto& mu : mus) rhs *= nd(times(z, mu), lam);
    r.max_rel_err = std::max(r.max_rel_err, rel_err(lhs, rhs));
    ++r.points;
  }
  r.note = "det(L_Q(z^Q)-l) vs prod_mu D(mu z,l)";
  return r;
}

IdentityCheck lemma_red_identity(const PeriodicGraph& base, const std::vector<long>& A,
                                 const std::vector<long>& Q, const std::vector<ParamPoly>& potential_A,
                                 const Params& params, int points, std::uint64_t seed) {
  const int d = base.d();
  std::vector<long> QA(d);
  for (int i = 0; i < d; ++i) {
    if (Q[i] % A[i] != 0) throw std::invalid_argument("A does not divide Q");
    QA[i] = Q[i] / A[i];
  }
  QExpansion ea = q_expand(base, A, potential_A);
  // The Q-expansion of base equals the Q/A-expansion of the A-expansion.
  QExpansion eq = q_expand(ea.expanded, QA);
  LaurentPoly DA = bind_params(ea.expanded, params).dispersion(kHardDetCap);
  LaurentPoly DQ = bind_params(eq.expanded, params).dispersion(kHardDetCap);
  NumericPoly na(DA, {}), nq(DQ, {});
  IdentityCheck r;
  PointSampler ps(seed);
  auto mus = roots_of_unity(QA);
  for (int t = 0; t < points; ++t) {
    std::vector<cplx> z(d);
    for (auto& x : z) x = ps.nonzero_complex();
    cplx lam = ps.nonzero_complex() * 4.0;
    cplx lhs = nq(power(z, QA), lam), rhs = 1.0;
    for (const auto& mu : mus) rhs *= na(times(z, mu), lam);
    r.max_rel_err = std::max(r.max_rel_err, rel_err(lhs, rhs));
    ++r.points;
  }
  return r;
}

std::vector<std::vector<std::vector<cplx>>> hat_potential(const QExpansion& qe, const Params& params) {
  const auto ks = cells(qe.Q);
  const auto mus = roots_of_unity(qe.Q);
  const std::size_t m = qe.base.size(), n = ks.size();
  const int d = qe.base.d();
  std::vector<std::vector<std::vector<cplx>>> t(n, std::vector<std::vector<cplx>>(n, std::vector<cplx>(m)));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t v = 0; v < m; ++v) {
        cplx s = 0;
        for (std::size_t c = 0; c < n; ++c) {
          const auto& p = qe.expanded.potential()[c * m + v];
          if (!p) throw std::invalid_argument("missing potential");
          double val = p->evaluate(params).get_d();
          cplx ph = 1.0;
          for (int i = 0; i < d; ++i)
            for (long k = 0; k < ks[c][i]; ++k) ph *= mus[b][i] / mus[a][i];
          s += val * ph;
        }
        t[a][b][v] = s / static_cast<double>(n);
      }
  return t;
}

IdentityCheck hat_identity(const QExpansion& qe, const Params& params, int points, std::uint64_t seed) {
  const std::size_t m = qe.base.size();
  const int d = qe.base.d();
  auto table = hat_potential(qe, params);
  PeriodicGraph zero = qe.base.with_potential(std::vector<ParamPoly>(m));
  LaurentMatrix L0 = zero.floquet_matrix_no_lambda();
  LaurentPoly DQ = bind_params(qe.expanded, params).dispersion(kHardDetCap);
  NumericPoly nq(DQ, {});
  auto mus = roots_of_unity(qe.Q);
  const std::size_t n = mus.size();
  IdentityCheck r;
  PointSampler ps(seed);
  for (int t = 0; t < points; ++t) {
    std::vector<cplx> z(d);
    for (auto& x : z) x = ps.nonzero_complex();
    cplx lam = ps.nonzero_complex() * 4.0;
    CMatrix H(n * m);
    for (std::size_t a = 0; a < n; ++a) {
      CMatrix blk = evaluate(L0, times(z, mus[a]), 0.0, params);
      for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) H(a * m + i, a * m + j) = blk(i, j);
        H(a * m + i, a * m + i) -= lam;
      }
      for (std::size_t b = 0; b < n; ++b)
        for (std::size_t v = 0; v < m; ++v) H(a * m + v, b * m + v) += table[a][b][v];
    }
    r.max_rel_err = std::max(r.max_rel_err, rel_err(det(H), nq(power(z, qe.Q), lam)));
    ++r.points;
  }
  r.note = "det(Lhat_Q - l) vs D_Q(z^Q,l)";
  return r;
}

double hermitian_defect(const PeriodicGraph& g, const Params& params, int points, std::uint64_t seed) {
  LaurentMatrix L = g.floquet_matrix_no_lambda();
  PointSampler ps(seed);
  double worst = 0;
  for (int t = 0; t < points; ++t) {
    std::vector<cplx> z(g.d());
    for (auto& x : z) x = ps.on_circle();
    CMatrix c = evaluate(L, z, 0.0, params);
    for (std::size_t i = 0; i < c.n; ++i)
      for (std::size_t j = 0; j < c.n; ++j) worst = std::max(worst, std::abs(c(i, j) - std::conj(c(j, i))));
  }
  return worst;
}

std::vector<double> hermitian_eigenvalues(const CMatrix& h, double tol, int max_sweeps) {
  const std::size_t n = h.n, N = 2 * n;
  std::vector<double> a(N * N);
  auto A = [&](std::size_t i, std::size_t j) -> double& { return a[i * N + j]; };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      double re = 0.5 * (h(i, j).real() + h(j, i).real());
      double im = 0.5 * (h(i, j).imag() - h(j, i).imag());
      A(i, j) = re;
      A(i + n, j + n) = re;
      A(i, j + n) = -im;
      A(i + n, j) = im;
    }
  double scale = 0;
  for (double x : a) scale = std::max(scale, std::abs(x));
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double off = 0;
    for (std::size_t p = 0; p < N; ++p)
      for (std::size_t q = p + 1; q < N; ++q) off = std::max(off, std::abs(A(p, q)));
    if (off <= tol * std::max(scale, 1.0)) break;
    for (std::size_t p = 0; p < N; ++p)
      for (std::size_t q = p + 1; q < N; ++q) {
        if (A(p, q) == 0.0) continue;
        double theta = (A(q, q) - A(p, p)) / (2 * A(p, q));
        double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1));
        double c = 1 / std::sqrt(t * t + 1), s = t * c;
        for (std::size_t k = 0; k < N; ++k) {
          double akp = A(k, p), akq = A(k, q);
          A(k, p) = c * akp - s * akq;
          A(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < N; ++k) {
          double apk = A(p, k), aqk = A(q, k);
          A(p, k) = c * apk - s * aqk;
          A(q, k) = s * apk + c * aqk;
        }
      }
  }
  std::vector<double> ev(N);
  for (std::size_t i = 0; i < N; ++i) ev[i] = A(i, i);
  std::sort(ev.begin(), ev.end());
  std::vector<double> out;
  for (std::size_t i = 0; i < N; i += 2) out.push_back(0.5 * (ev[i] + ev[i + 1]));
  return out;
}

std::vector<SpectrumSample> sample_spectrum(const PeriodicGraph& g, const Params& params, int grid_n) {
  if (grid_n <= 0) throw std::invalid_argument("grid size must be positive");
  PeriodicGraph b = bind_params(g, params);
  if (!b.labels_numeric() || !b.potential_symbols().empty())
    throw std::invalid_argument("spectrum sampling needs numeric labels and potential");
  LaurentMatrix L = b.floquet_matrix_no_lambda();
  const int d = g.d();
  std::vector<long> grid(d, grid_n);
  std::vector<SpectrumSample> out;
  auto ks = cells(grid);
  for (std::size_t idx = 0; idx < ks.size(); ++idx) {
    SpectrumSample s{idx, {}, {}};
    std::vector<cplx> z(d);
    for (int i = 0; i < d; ++i) {
      s.theta.push_back(static_cast<double>(ks[idx][i]) / grid_n);
      z[i] = std::polar(1.0, 2 * std::numbers::pi * s.theta.back());
    }
    s.eigenvalues = hermitian_eigenvalues(evaluate(L, z, 0.0, {}));
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace bloch
