#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "bloch/periodic_graph.hpp"

namespace bloch {

using cplx = std::complex<double>;
using Params = std::map<std::string, mpq_class>;

struct CMatrix {
  std::size_t n = 0;
  std::vector<cplx> a;
  explicit CMatrix(std::size_t n_ = 0) : n(n_), a(n_ * n_, 0.0) {}
  cplx& operator()(std::size_t i, std::size_t j) { return a[i * n + j]; }
  cplx operator()(std::size_t i, std::size_t j) const { return a[i * n + j]; }
};

// Substitutes numeric values for label and potential symbols.
PeriodicGraph bind_params(const PeriodicGraph& g, const Params& params);

CMatrix evaluate(const LaurentMatrix& m, const std::vector<cplx>& z, cplx lambda, const Params& params);
cplx det(CMatrix m);

// Roots of unity mu in U_Q, one per cell, same order as cells(Q).
std::vector<std::vector<cplx>> roots_of_unity(const std::vector<long>& Q);

// Deterministic sample point generator (splitmix based).
class PointSampler {
 public:
  explicit PointSampler(std::uint64_t seed) : state_(seed) {}
  double uniform();  // [0, 1)
  cplx nonzero_complex();  // modulus in [1/2, 2]
  cplx on_circle();

 private:
  std::uint64_t state_;
};

struct IdentityCheck {
  bool applicable = true;
  std::string note;
  int points = 0;
  double max_rel_err = 0;
};

// D_Q(z^Q, lambda) against prod_mu D(mu z, lambda); polynomials evaluated numerically.
IdentityCheck product_identity(const QExpansion& qe, const Params& params, int points,
                               std::uint64_t seed, std::size_t cap = kDefaultDetCap);
// D_Q(z^{Q/A}, lambda) against prod over U_{Q/A} of D_A(mu z, lambda).
IdentityCheck lemma_red_identity(const PeriodicGraph& base, const std::vector<long>& A,
                                 const std::vector<long>& Q, const std::vector<ParamPoly>& potential_A,
                                 const Params& params, int points, std::uint64_t seed);

// Fourier potential blocks: table[rho][mu][v].
std::vector<std::vector<std::vector<cplx>>> hat_potential(const QExpansion& qe, const Params& params);
// det(Lhat_Q(z, lambda)) against D_Q(z^Q, lambda), evaluated numerically.
IdentityCheck hat_identity(const QExpansion& qe, const Params& params, int points, std::uint64_t seed);

// max |L(z)_{ij} - conj(L(z)_{ji})| over sampled z on the torus.
double hermitian_defect(const PeriodicGraph& g, const Params& params, int points, std::uint64_t seed);

// Eigenvalues (ascending) of a Hermitian matrix via cyclic Jacobi on its real embedding.
std::vector<double> hermitian_eigenvalues(const CMatrix& h, double tol = 1e-12, int max_sweeps = 100);

struct SpectrumSample {
  std::size_t grid_index;
  std::vector<double> theta;  // z_i = exp(2 pi i theta_i)
  std::vector<double> eigenvalues;
};
std::vector<SpectrumSample> sample_spectrum(const PeriodicGraph& g, const Params& params, int grid_n);

}  // namespace bloch
