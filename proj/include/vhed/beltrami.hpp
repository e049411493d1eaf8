#pragma once

#include <vector>

#include "vhed/grid.hpp"

namespace vhed {

// Coefficients of the CGO integral equation (I + A rho) u = -conj(alpha) for
// Beltrami coefficient sign*mu at spectral parameter k:
//   e_{-k}(z) = exp(-2i Re(kz)),  nu = sign e_{-k} mu,  alpha = -i conj(k) nu.
// The phase e_k is unimodular and nu, alpha inherit the support of mu.
struct CgoWorkspace {
  GridPtr grid;
  int sign = +1;
  cdouble k{0.0, 0.0};
  FieldArray alpha, alpha_bar, nu_bar;  // nu itself is only needed via conj
  // A(conj u) = -nu_bar .* IFFT[(ik P + S) FFT(conj u)]; the combined
  // multiplier ik*symP + symS is fixed per (k, sign) task
  FieldArray combined_symbol;

  double support_radius = 0.0;     // measured support of mu
  std::vector<int> support_cells;  // linear (column-major) indices with mu != 0
};

CgoWorkspace assemble_coefficients(const ComplexField& mu, int sign, cdouble k);

// A(conj(u)) = -alpha_bar * P(conj u) - nu_bar * S(conj u).
// The composite map u -> A rho u is R-linear only.
ComplexField apply_A_rho(const CgoWorkspace& ws, const ComplexField& u);

struct CgoOptions {
  double tol = 1e-8;
  int max_iter = 400;
  int restart = 30;
  bool use_fixed_point = false;  // cheap alternative for small ||mu||_inf
  double damping = 1.0;
  bool interior_omega = true;  // sweeps only need boundary traces
};

struct CgoSolution {
  ComplexField u;
  ComplexField omega;                    // -P(conj u), interior
  std::vector<cdouble> omega_boundary;   // direct quadrature at boundary points
  double residual = 0.0;                 // ||(I + A rho)u + conj(alpha)|| / ||conj(alpha)||
  int iterations = 0;
};

// Solve (I + A rho) u = -conj(alpha). k = 0 (or mu = 0) short-circuits to the
// zero solution. warm_start, if given, seeds the Krylov iteration. The
// residual certificate is recomputed explicitly on the returned u.
CgoSolution solve_cgo(const CgoWorkspace& ws, const CgoOptions& opts = {},
                      const FieldArray* warm_start = nullptr,
                      const BoundaryQuadrature* boundary = nullptr);

struct NeumannTerm {
  ComplexField u;
  ComplexField omega;
  std::vector<cdouble> omega_boundary;
};

// u_1 = -conj(alpha), u_{n+1} = -A(conj(u_n)), omega_n = -P(conj(u_n)).
std::vector<NeumannTerm> neumann_terms(const CgoWorkspace& ws, int count,
                                       const BoundaryQuadrature* boundary = nullptr,
                                       bool interior_omega = true);

struct ParityReport {
  // max_n ||u_n^+ - (-1)^n u_n^-||_inf / ||u_n^+||_inf, one entry per term
  std::vector<double> deviation;
  double worst = 0.0;
};

// Term-wise parity of the scattering series: u_n^+ = (-1)^n u_n^-.
ParityReport parity_witness(const ComplexField& mu, cdouble k, int count);

}  // namespace vhed
