#include "vhed/beltrami.hpp"

#include <cmath>
#include <sstream>

#include "vhed/fft.hpp"
#include "vhed/krylov.hpp"

namespace vhed {

namespace {

FieldArray& hot_scratch(int n) {
  thread_local FieldArray s;
  if (s.rows() != n || s.cols() != n) s.resize(n, n);
  return s;
}

FieldArray a_rho_values(const CgoWorkspace& ws, const FieldArray& u) {
  auto& fft = thread_fft();
  FieldArray& t = hot_scratch(static_cast<int>(u.rows()));
  t = u.conjugate();
  fft.forward(t);
  t *= ws.combined_symbol;
  fft.inverse(t);
  return -(ws.nu_bar * t);
}

}  // namespace

CgoWorkspace assemble_coefficients(const ComplexField& mu, int sign, cdouble k) {
  if (sign != 1 && sign != -1) throw ContractError("assemble_coefficients: sign must be +-1");
  CgoWorkspace ws;
  ws.grid = mu.grid;
  ws.sign = sign;
  ws.k = k;

  const int n = mu.n();
  const cdouble* mv = mu.v.data();
  for (int idx = 0; idx < n * n; ++idx) {
    if (mv[idx] == cdouble(0.0, 0.0)) continue;
    ws.support_cells.push_back(idx);
    const cdouble z = mu.grid->point(idx / n, idx % n);
    ws.support_radius = std::max(ws.support_radius, std::abs(z));
  }
  if (mu.grid->side_half() < 2.0 * ws.support_radius)
    throw ContractError("grid side_half must be at least twice the coefficient support radius");

  // e_{-k}(x,y) = exp(-2i(ax - by)) is separable, k = a + ib.
  const double a = k.real(), b = k.imag();
  Eigen::ArrayXcd ex(n), ey(n);
  for (int i = 0; i < n; ++i) {
    const double c = mu.grid->coord(i);
    ex(i) = std::polar(1.0, -2.0 * a * c);
    ey(i) = std::polar(1.0, 2.0 * b * c);
  }
  FieldArray e_minus_k = ey.matrix() * ex.matrix().transpose();  // (iy, ix)
  FieldArray nu = static_cast<double>(sign) * e_minus_k * mu.v;
  ws.alpha = (-kI * std::conj(k)) * nu;
  ws.alpha_bar = ws.alpha.conjugate();
  ws.nu_bar = nu.conjugate();
  ws.combined_symbol =
      (kI * k) * mu.grid->cauchy_symbol() + mu.grid->beurling_symbol();
  return ws;
}

ComplexField apply_A_rho(const CgoWorkspace& ws, const ComplexField& u) {
  return {u.grid, a_rho_values(ws, u.v)};
}

CgoSolution solve_cgo(const CgoWorkspace& ws, const CgoOptions& opts,
                      const FieldArray* warm_start, const BoundaryQuadrature* boundary) {
  const int n = ws.grid->n();
  CgoSolution sol;
  sol.u = ComplexField(ws.grid);
  const double rhs_peak = ws.alpha_bar.abs().maxCoeff();

  if (ws.k != cdouble(0.0, 0.0) && rhs_peak > 0.0) {
    // Every Krylov vector of (I + A rho) u = -alpha_bar is supported on the
    // support cells of mu, so the iteration runs on the restricted vector.
    // Complex cell values are interleaved (re, im); the realified Euclidean
    // inner product is Re<.,.>, as required for the R-linear operator.
    const auto& cells = ws.support_cells;
    const Eigen::Index nc2 = static_cast<Eigen::Index>(2) * cells.size();
    const cdouble* abar = ws.alpha_bar.data();

    auto gather = [&](const FieldArray& full, Eigen::VectorXd& packed) {
      packed.resize(nc2);
      cdouble* p = reinterpret_cast<cdouble*>(packed.data());
      for (size_t c = 0; c < cells.size(); ++c) p[c] = full.data()[cells[c]];
    };
    FieldArray uin = FieldArray::Zero(n, n);
    auto scatter = [&](const Eigen::VectorXd& packed) {
      const cdouble* p = reinterpret_cast<const cdouble*>(packed.data());
      for (size_t c = 0; c < cells.size(); ++c) uin.data()[cells[c]] = p[c];
    };

    Eigen::VectorXd b(nc2);
    {
      cdouble* p = reinterpret_cast<cdouble*>(b.data());
      for (size_t c = 0; c < cells.size(); ++c) p[c] = -abar[cells[c]];
    }
    Eigen::VectorXd x(nc2);
    if (warm_start) {
      if (warm_start->rows() != n || warm_start->cols() != n)
        throw ContractError("solve_cgo: warm start has wrong shape");
      gather(*warm_start, x);
    } else {
      x.setZero();
    }

    auto apply = [&](const Eigen::VectorXd& xin, Eigen::VectorXd& out) {
      scatter(xin);
      const FieldArray au = a_rho_values(ws, uin);
      out.resize(nc2);
      cdouble* p = reinterpret_cast<cdouble*>(out.data());
      const cdouble* uv = uin.data();
      const cdouble* av = au.data();
      for (size_t c = 0; c < cells.size(); ++c) p[c] = uv[cells[c]] + av[cells[c]];
    };

    if (opts.use_fixed_point) {
      Eigen::VectorXd w(nc2);
      const double rhs_norm = b.norm();
      double rel = 1.0;
      int it = 0;
      for (; it < opts.max_iter; ++it) {
        apply(x, w);
        w = b - w;  // residual
        rel = w.norm() / rhs_norm;
        if (!std::isfinite(rel)) throw ComputeError("solve_cgo: fixed point diverged (NaN)");
        if (rel <= opts.tol) break;
        x += opts.damping * w;
      }
      sol.iterations = it;
      if (rel > opts.tol) {
        std::ostringstream msg;
        msg << "solve_cgo: fixed point did not converge at k = (" << ws.k.real() << ", "
            << ws.k.imag() << "), sign " << ws.sign << ": residual " << rel << " after " << it
            << " iterations";
        throw ComputeError(msg.str());
      }
    } else {
      GmresResult g = gmres(apply, b, x, opts.restart, opts.max_iter, opts.tol);
      sol.iterations = g.iterations;
      if (!g.converged) {
        std::ostringstream msg;
        msg << "solve_cgo: gmres did not converge at k = (" << ws.k.real() << ", "
            << ws.k.imag() << "), sign " << ws.sign << ": residual " << g.rel_residual
            << " after " << g.iterations << " iterations; history tail:";
        const size_t m = g.history.size();
        for (size_t i = (m > 5 ? m - 5 : 0); i < m; ++i) msg << " " << g.history[i];
        throw ComputeError(msg.str());
      }
    }
    scatter(x);
    sol.u.v = uin;

    // residual certificate on the returned u, assembled on the full grid
    FieldArray resid = sol.u.v + a_rho_values(ws, sol.u.v) + ws.alpha_bar;
    sol.residual = std::sqrt(resid.abs2().sum() / ws.alpha_bar.abs2().sum());
    assert_finite(sol.u, "solve_cgo");
  }

  if (opts.interior_omega) {
    ComplexField ubar(ws.grid, sol.u.v.conjugate());
    sol.omega = cauchy_apply(ubar);
    sol.omega.v = -sol.omega.v;
  } else {
    sol.omega = ComplexField(ws.grid);
  }
  if (boundary) sol.omega_boundary = boundary->trace(sol.u);
  return sol;
}

std::vector<NeumannTerm> neumann_terms(const CgoWorkspace& ws, int count,
                                       const BoundaryQuadrature* boundary,
                                       bool interior_omega) {
  if (count < 1) throw ContractError("neumann_terms: count must be >= 1");
  std::vector<NeumannTerm> terms;
  terms.reserve(static_cast<size_t>(count));
  FieldArray u = -ws.alpha_bar;
  for (int n = 1; n <= count; ++n) {
    NeumannTerm term;
    term.u = ComplexField(ws.grid, u);
    if (interior_omega) {
      ComplexField ubar(ws.grid, u.conjugate());
      term.omega = cauchy_apply(ubar);
      term.omega.v = -term.omega.v;
    } else {
      term.omega = ComplexField(ws.grid);
    }
    if (boundary) term.omega_boundary = boundary->trace(term.u);
    terms.push_back(std::move(term));
    if (n < count) u = -a_rho_values(ws, u);
  }
  return terms;
}

ParityReport parity_witness(const ComplexField& mu, cdouble k, int count) {
  const CgoWorkspace plus = assemble_coefficients(mu, +1, k);
  const CgoWorkspace minus = assemble_coefficients(mu, -1, k);
  const auto tp = neumann_terms(plus, count);
  const auto tm = neumann_terms(minus, count);
  ParityReport rep;
  for (int n = 1; n <= count; ++n) {
    const double flip = (n % 2 == 0) ? 1.0 : -1.0;  // u_n^+ = (-1)^n u_n^-
    const FieldArray diff =
        tp[static_cast<size_t>(n - 1)].u.v - flip * tm[static_cast<size_t>(n - 1)].u.v;
    const double scale = tp[static_cast<size_t>(n - 1)].u.v.abs().maxCoeff();
    rep.deviation.push_back(scale > 0.0 ? diff.abs().maxCoeff() / scale : 0.0);
    rep.worst = std::max(rep.worst, rep.deviation.back());
  }
  return rep;
}

}  // namespace vhed
