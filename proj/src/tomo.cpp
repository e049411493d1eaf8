#include "vhed/tomo.hpp"

#include <cmath>

#include "vhed/fft.hpp"

namespace vhed {

namespace {

struct LineGeometry {
  double cosp, sinp;
};

inline void bilinear_weights(const PeriodicGrid& g, double x, double y, int& ix0, int& iy0,
                             double& fx, double& fy) {
  const double gx = (x + g.side_half()) / g.spacing();
  const double gy = (y + g.side_half()) / g.spacing();
  ix0 = static_cast<int>(std::floor(gx));
  iy0 = static_cast<int>(std::floor(gy));
  fx = gx - ix0;
  fy = gy - iy0;
}

double resolve_du(const RadonGrid& rg, const PeriodicGrid& g) {
  return rg.du > 0.0 ? rg.du : 0.25 * g.spacing();
}

constexpr double kLineHalfLength = 1.3;

void check_unit_disc_support(const ComplexField& f) {
  const double peak = max_abs(f);
  if (max_abs_outside_radius(f, 1.0) > std::max(1e-12, 1e-10 * peak))
    throw ContractError("radon: field not compactly supported in the unit disc");
}

}  // namespace

RadonData radon(const ComplexField& f, const RadonGrid& rg, const std::vector<double>& phis) {
  check_unit_disc_support(f);
  const auto& g = *f.grid;
  const double du = resolve_du(rg, g);
  const int nu = 2 * static_cast<int>(std::floor(kLineHalfLength / du)) + 1;
  const double u0 = -du * (nu / 2);

  RadonData out;
  out.phis = phis;
  out.s0 = -rg.s_max;
  out.ds = rg.ds();
  out.vals.setZero(rg.n_s, static_cast<Eigen::Index>(phis.size()));

  for (size_t a = 0; a < phis.size(); ++a) {
    const LineGeometry lg{std::cos(phis[a]), std::sin(phis[a])};
    for (int i = 0; i < rg.n_s; ++i) {
      const double s = out.s(i);
      cdouble acc(0.0, 0.0);
      for (int j = 0; j < nu; ++j) {
        const double u = u0 + j * du;
        // x = s w + u w_perp, w = (cos, -sin), w_perp = (sin, cos)
        const double x = s * lg.cosp + u * lg.sinp;
        const double y = -s * lg.sinp + u * lg.cosp;
        int ix0, iy0;
        double fx, fy;
        bilinear_weights(g, x, y, ix0, iy0, fx, fy);
        acc += (1.0 - fx) * (1.0 - fy) * f.v(iy0, ix0) + fx * (1.0 - fy) * f.v(iy0, ix0 + 1) +
               (1.0 - fx) * fy * f.v(iy0 + 1, ix0) + fx * fy * f.v(iy0 + 1, ix0 + 1);
      }
      out.vals(i, static_cast<Eigen::Index>(a)) = acc * du;
    }
  }
  return out;
}

ComplexField radon_adjoint(const RadonData& data, const RadonGrid& rg, const GridPtr& grid) {
  const auto& g = *grid;
  const double du = resolve_du(rg, g);
  const int nu = 2 * static_cast<int>(std::floor(kLineHalfLength / du)) + 1;
  const double u0 = -du * (nu / 2);

  ComplexField out(grid);
  for (size_t a = 0; a < data.phis.size(); ++a) {
    const LineGeometry lg{std::cos(data.phis[a]), std::sin(data.phis[a])};
    for (int i = 0; i < data.n_s(); ++i) {
      const double s = data.s(i);
      const cdouble val = data.vals(i, static_cast<Eigen::Index>(a)) * du;
      for (int j = 0; j < nu; ++j) {
        const double u = u0 + j * du;
        const double x = s * lg.cosp + u * lg.sinp;
        const double y = -s * lg.sinp + u * lg.cosp;
        int ix0, iy0;
        double fx, fy;
        bilinear_weights(g, x, y, ix0, iy0, fx, fy);
        out.v(iy0, ix0) += (1.0 - fx) * (1.0 - fy) * val;
        out.v(iy0, ix0 + 1) += fx * (1.0 - fy) * val;
        out.v(iy0 + 1, ix0) += (1.0 - fx) * fy * val;
        out.v(iy0 + 1, ix0 + 1) += fx * fy * val;
      }
    }
  }
  return out;
}

namespace {

// centered differences, one-sided closures at the ends
Eigen::ArrayXXcd d_ds(const Eigen::ArrayXXcd& r, double ds) {
  const Eigen::Index n = r.rows();
  Eigen::ArrayXXcd g(n, r.cols());
  for (Eigen::Index a = 0; a < r.cols(); ++a) {
    g(0, a) = (r(1, a) - r(0, a)) / ds;
    for (Eigen::Index i = 1; i + 1 < n; ++i) g(i, a) = (r(i + 1, a) - r(i - 1, a)) / (2.0 * ds);
    g(n - 1, a) = (r(n - 1, a) - r(n - 2, a)) / ds;
  }
  return g;
}

Eigen::ArrayXXcd d_ds_transpose(const Eigen::ArrayXXcd& g, double ds) {
  const Eigen::Index n = g.rows();
  Eigen::ArrayXXcd r = Eigen::ArrayXXcd::Zero(n, g.cols());
  for (Eigen::Index a = 0; a < g.cols(); ++a) {
    r(0, a) += -g(0, a) / ds;
    r(1, a) += g(0, a) / ds;
    for (Eigen::Index i = 1; i + 1 < n; ++i) {
      r(i - 1, a) += -g(i, a) / (2.0 * ds);
      r(i + 1, a) += g(i, a) / (2.0 * ds);
    }
    r(n - 2, a) += -g(n - 1, a) / ds;
    r(n - 1, a) += g(n - 1, a) / ds;
  }
  return r;
}

}  // namespace

Sinogram forward_T1a(const ComplexField& mu, const KGrid& kgrid, const T1aOptions& opts) {
  std::vector<double> phis(static_cast<size_t>(kgrid.n_phi));
  for (int a = 0; a < kgrid.n_phi; ++a) phis[static_cast<size_t>(a)] = kgrid.phi(a);
  const RadonData r = radon(mu, opts.rgrid, phis);
  const Eigen::ArrayXXcd g = d_ds(r.vals, r.ds);

  Sinogram sino;
  sino.vals.setZero(kgrid.n_tau, kgrid.n_phi);
  sino.t0 = kgrid.t(0);
  sino.dt = kgrid.dt();
  sino.provenance = "oracle-T1a";
  sino.sign = +1;
  for (int a = 0; a < kgrid.n_phi; ++a) {
    const cdouble phase = opts.constant * std::polar(1.0, -kgrid.phi(a));
    for (int m = 0; m < kgrid.n_tau; ++m) {
      const double s = 0.5 * kgrid.t(m);
      const double pos = (s - r.s0) / r.ds;
      const int i0 = static_cast<int>(std::floor(pos));
      if (i0 < 0 || i0 + 1 >= r.n_s()) continue;
      const double lam = pos - i0;
      sino.vals(m, a) = phase * ((1.0 - lam) * g(i0, a) + lam * g(i0 + 1, a));
    }
  }
  return sino;
}

ComplexField forward_T1a_adjoint(const Sinogram& sino, const KGrid& kgrid, const GridPtr& grid,
                                 const T1aOptions& opts) {
  const int n_s = opts.rgrid.n_s;
  Eigen::ArrayXXcd gT = Eigen::ArrayXXcd::Zero(n_s, kgrid.n_phi);
  const double s0 = -opts.rgrid.s_max;
  const double ds = opts.rgrid.ds();
  for (int a = 0; a < kgrid.n_phi; ++a) {
    const cdouble phase = std::conj(opts.constant * std::polar(1.0, -kgrid.phi(a)));
    for (int m = 0; m < kgrid.n_tau; ++m) {
      const double s = 0.5 * kgrid.t(m);
      const double pos = (s - s0) / ds;
      const int i0 = static_cast<int>(std::floor(pos));
      if (i0 < 0 || i0 + 1 >= n_s) continue;
      const double lam = pos - i0;
      const cdouble val = phase * sino.vals(m, a);
      gT(i0, a) += (1.0 - lam) * val;
      gT(i0 + 1, a) += lam * val;
    }
  }
  RadonData rT;
  rT.vals = d_ds_transpose(gT, ds);
  rT.s0 = s0;
  rT.ds = ds;
  rT.phis.resize(static_cast<size_t>(kgrid.n_phi));
  for (int a = 0; a < kgrid.n_phi; ++a) rT.phis[static_cast<size_t>(a)] = kgrid.phi(a);
  return radon_adjoint(rT, opts.rgrid, grid);
}

Sinogram abs_fourier_filter(const Sinogram& sino, double p) {
  const int n = sino.n_t();
  Sinogram out = sino;
  auto& fft = thread_fft();
  std::vector<cdouble> col(static_cast<size_t>(n));
  const double dfreq = 2.0 * kPi / (n * sino.dt);
  for (int a = 0; a < sino.n_phi(); ++a) {
    for (int m = 0; m < n; ++m) col[static_cast<size_t>(m)] = sino.vals(m, a);
    fft.forward1d(col);
    for (int q = 0; q < n; ++q) {
      const int qs = (q < n / 2) ? q : q - n;
      if (qs == 0) {
        if (p != 0.0) col[static_cast<size_t>(q)] = 0.0;
      } else {
        col[static_cast<size_t>(q)] *= std::pow(std::abs(dfreq * qs), p);
      }
    }
    fft.inverse1d(col);
    for (int m = 0; m < n; ++m) out.vals(m, a) = col[static_cast<size_t>(m)];
  }
  return out;
}

namespace {

enum class SFilter { Hilbert, DerivativeTimesMinusI };

// Strip constant and e^{-i phi}, read s = t/2, filter in s (zero-padded x2),
// back-project over [0, pi).
ComplexField invert_core(const Sinogram& sino, const GridPtr& grid, cdouble constant,
                         SFilter filter) {
  const int nt = sino.n_t();
  const int na = sino.n_phi();
  const int np = 2 * nt;  // padded filter length
  const double ds = 0.5 * sino.dt;
  const double s_first = 0.5 * sino.t0;

  Eigen::ArrayXXcd filtered(nt, na);
  auto& fft = thread_fft();
  std::vector<cdouble> buf;
  for (int a = 0; a < na; ++a) {
    const cdouble strip = 1.0 / (constant * std::polar(1.0, -(kPi * a) / na));
    buf.assign(static_cast<size_t>(np), cdouble(0.0, 0.0));
    for (int m = 0; m < nt; ++m) buf[static_cast<size_t>(m + nt / 2)] = strip * sino.vals(m, a);
    fft.forward1d(buf);
    for (int q = 0; q < np; ++q) {
      const int qs = (q < np / 2) ? q : q - np;
      const double sigma = 2.0 * kPi * qs / (np * ds);
      cdouble mult;
      if (filter == SFilter::Hilbert)
        mult = (qs == 0) ? cdouble(0.0, 0.0) : cdouble(0.0, -(sigma > 0 ? 1.0 : -1.0));
      else
        mult = cdouble(0.0, -sigma);
      buf[static_cast<size_t>(q)] *= mult;
    }
    fft.inverse1d(buf);
    for (int m = 0; m < nt; ++m) filtered(m, a) = buf[static_cast<size_t>(m + nt / 2)];
  }

  ComplexField out(grid);
  const int n = grid->n();
  const double dphi = kPi / na;
  for (int a = 0; a < na; ++a) {
    const double cosp = std::cos(kPi * a / na), sinp = std::sin(kPi * a / na);
    for (int ix = 0; ix < n; ++ix) {
      const double x = grid->coord(ix);
      for (int iy = 0; iy < n; ++iy) {
        const double s = x * cosp - grid->coord(iy) * sinp;
        const double pos = (s - s_first) / ds;
        const int i0 = static_cast<int>(std::floor(pos));
        if (i0 < 0 || i0 + 1 >= nt) continue;
        const double lam = pos - i0;
        out.v(iy, ix) += (1.0 - lam) * filtered(i0, a) + lam * filtered(i0 + 1, a);
      }
    }
  }
  out.v *= dphi / (2.0 * kPi);
  assert_finite(out, "invert_core");
  return out;
}

}  // namespace

ComplexField fbp_invert(const Sinogram& sino, const GridPtr& grid, cdouble constant) {
  return invert_core(sino, grid, constant, SFilter::Hilbert);
}

ComplexField lambda_invert(const Sinogram& sino, const GridPtr& grid, cdouble constant) {
  return invert_core(sino, grid, constant, SFilter::DerivativeTimesMinusI);
}

Calibration calibrate_constant(const Sinogram& pipeline_term1, const Sinogram& oracle_windowed) {
  const auto& p = pipeline_term1.vals;
  const auto& o = oracle_windowed.vals;
  if (p.rows() != o.rows() || p.cols() != o.cols())
    throw ContractError("calibrate_constant: sinogram shapes do not match");
  const cdouble num = (p.conjugate() * o).sum();
  const double den = p.abs2().sum();
  Calibration cal;
  if (den == 0.0) throw ContractError("calibrate_constant: pipeline sinogram is zero");
  cal.constant = num / den;
  cal.fit_residual = relative_l2(cal.constant * p, o);
  return cal;
}

double relative_l2(const Eigen::ArrayXXcd& a, const Eigen::ArrayXXcd& ref) {
  const double rn = std::sqrt(ref.abs2().sum());
  if (rn == 0.0) return std::sqrt(a.abs2().sum());
  return std::sqrt((a - ref).abs2().sum()) / rn;
}

}  // namespace vhed
