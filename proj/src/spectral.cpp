#include "vhed/spectral.hpp"

#include <cmath>
#include <functional>
#include <iostream>
#include <mutex>

#include "vhed/fft.hpp"
#include "vhed/parallel.hpp"

namespace vhed {

Window window_from_name(const std::string& name) {
  if (name == "rectangular" || name == "rect") return Window::Rectangular;
  if (name == "hann") return Window::Hann;
  if (name == "blackman") return Window::Blackman;
  throw ContractError("unknown window: " + name);
}

std::string window_name(Window w) {
  switch (w) {
    case Window::Rectangular: return "rectangular";
    case Window::Hann: return "hann";
    case Window::Blackman: return "blackman";
  }
  return "?";
}

double window_value(Window w, double tau, double cutoff) {
  if (std::abs(tau) >= cutoff && w != Window::Rectangular) return 0.0;
  const double x = kPi * tau / cutoff;
  switch (w) {
    case Window::Rectangular: return std::abs(tau) <= cutoff ? 1.0 : 0.0;
    case Window::Hann: return 0.5 * (1.0 + std::cos(x));
    case Window::Blackman: return 0.42 + 0.5 * std::cos(x) + 0.08 * std::cos(2.0 * x);
  }
  return 0.0;
}

void KGrid::validate() const {
  if (!(cutoff > 0.0)) throw ContractError("kgrid: cutoff R must be positive");
  if (n_tau < 2 || (n_tau & (n_tau - 1)) != 0)
    throw ContractError("kgrid: n_tau must be a power of two >= 2");
  if (n_phi < 1) throw ContractError("kgrid: n_phi must be positive");
}

namespace {

void check_uniform_circle(const std::vector<cdouble>& pts) {
  const int nb = static_cast<int>(pts.size());
  if (nb < 4) throw ContractError("boundary: need at least 4 uniform points on |z| = 1");
  const double th0 = std::arg(pts[0]);
  for (int b = 0; b < nb; ++b) {
    const cdouble want = std::polar(1.0, th0 + 2.0 * kPi * b / nb);
    if (std::abs(pts[static_cast<size_t>(b)] - want) > 1e-9)
      throw ContractError("boundary: points are not uniform samples of the unit circle");
  }
}

}  // namespace

std::vector<SpectralCube> sweep(const ComplexField& mu, const KGrid& kgrid,
                                const std::vector<cdouble>& boundary_points,
                                const std::vector<int>& signs, const SweepOptions& opts) {
  kgrid.validate();
  check_uniform_circle(boundary_points);
  const int nb = static_cast<int>(boundary_points.size());
  const int nr = kgrid.n_tau;
  const int na = kgrid.n_phi;
  const int terms = opts.neumann_order;

  const BoundaryQuadrature quad(*mu.grid, boundary_points);

  std::vector<SpectralCube> cubes;
  const size_t per_sign = (terms > 0) ? static_cast<size_t>(terms) : 1;
  for (int sign : signs) {
    for (size_t t = 0; t < per_sign; ++t) {
      SpectralCube c;
      c.boundary_points = boundary_points;
      c.n_rad = nr;
      c.n_phi = na;
      c.domain = CubeDomain::Tau;
      c.sign = sign;
      c.data.assign(static_cast<size_t>(nb) * nr * na, cdouble(0.0, 0.0));
      cubes.push_back(std::move(c));
    }
  }

  std::mutex log_mutex;
  std::vector<std::function<void()>> tasks;
  for (size_t si = 0; si < signs.size(); ++si) {
    const int sign = signs[si];
    for (int a = 0; a < na; ++a) {
      // tau = 0 stays exactly zero; each half-ray is one warm-start chain.
      for (int dir : {+1, -1}) {
        tasks.emplace_back([&, si, sign, a, dir]() {
          const int mid = nr / 2;
          FieldArray prev, last, seed;
          int have = 0;  // how many previous solutions along this half-ray
          int done = 0;
          CgoOptions solver = opts.solver;
          solver.interior_omega = false;
          for (int r = mid + dir; r >= 0 && r < nr; r += dir) {
            const cdouble k = kgrid.tau(r) * std::polar(1.0, kgrid.phi(a));
            const CgoWorkspace ws = assemble_coefficients(mu, sign, k);
            if (terms > 0) {
              const auto tt = neumann_terms(ws, terms, &quad, false);
              for (int t = 0; t < terms; ++t)
                for (int b = 0; b < nb; ++b)
                  cubes[si * per_sign + static_cast<size_t>(t)].at(b, r, a) =
                      tt[static_cast<size_t>(t)].omega_boundary[static_cast<size_t>(b)];
            } else {
              const FieldArray* start = nullptr;
              if (opts.warm_start && have >= 2) {
                seed = 2.0 * last - prev;  // omega is analytic in tau
                start = &seed;
              } else if (opts.warm_start && have == 1) {
                start = &last;
              }
              const CgoSolution sol = solve_cgo(ws, solver, start, &quad);
              if (opts.warm_start) {
                prev.swap(last);
                last = sol.u.v;
                have = std::min(have + 1, 2);
              }
              for (int b = 0; b < nb; ++b)
                cubes[si * per_sign].at(b, r, a) = sol.omega_boundary[static_cast<size_t>(b)];
            }
            ++done;
          }
          if (opts.verbose) {
            std::lock_guard<std::mutex> lock(log_mutex);
            std::cerr << "sweep: sign " << sign << " phi[" << a << "] dir " << dir << ": "
                      << done << " solves\n";
          }
        });
      }
    }
  }
  run_tasks(std::move(tasks), opts.workers);
  return cubes;
}

namespace {

// omega_hat(t_m) = dtau sum_j w_j c_j e^{+i t_m tau_j}
//               = dtau * n * (-1)^(m - n/2) * ifft((-1)^j w_j c_j)[m],
// using t_m tau_j = -pi(m - n/2) + 2 pi (m - n/2) j / n on the dual grids.
void partial_ft_column(std::vector<cdouble>& col, const KGrid& kgrid, bool with_window) {
  const int n = kgrid.n_tau;
  for (int j = 0; j < n; ++j) {
    double f = (j % 2 == 0) ? 1.0 : -1.0;
    if (with_window) f *= window_value(kgrid.window, kgrid.tau(j), kgrid.cutoff);
    col[static_cast<size_t>(j)] *= f;
  }
  thread_fft().inverse1d(col);
  const double scale = kgrid.dtau() * n;
  for (int m = 0; m < n; ++m) {
    const double sgn = ((m - n / 2) % 2 == 0) ? 1.0 : -1.0;
    col[static_cast<size_t>(m)] *= scale * sgn;
  }
}

}  // namespace

SpectralCube partial_ft(const SpectralCube& cube, const KGrid& kgrid) {
  if (cube.domain != CubeDomain::Tau) throw ContractError("partial_ft: cube is not tau-domain");
  if (cube.n_rad != kgrid.n_tau || cube.n_phi != kgrid.n_phi)
    throw ContractError("partial_ft: cube does not match kgrid");
  SpectralCube out = cube;
  out.domain = CubeDomain::T;
  const int nb = static_cast<int>(cube.boundary_points.size());
  std::vector<cdouble> col(static_cast<size_t>(kgrid.n_tau));
  for (int a = 0; a < cube.n_phi; ++a) {
    for (int b = 0; b < nb; ++b) {
      for (int r = 0; r < cube.n_rad; ++r) col[static_cast<size_t>(r)] = cube.at(b, r, a);
      partial_ft_column(col, kgrid, true);
      for (int r = 0; r < cube.n_rad; ++r) out.at(b, r, a) = col[static_cast<size_t>(r)];
    }
  }
  return out;
}

std::vector<cdouble> sino_tau_to_t(const std::vector<cdouble>& y, const KGrid& kgrid) {
  if (static_cast<int>(y.size()) != kgrid.n_tau)
    throw ContractError("sino_tau_to_t: length mismatch");
  std::vector<cdouble> col = y;
  partial_ft_column(col, kgrid, false);
  return col;
}

std::vector<cdouble> sino_t_to_tau(const std::vector<cdouble>& g, const KGrid& kgrid) {
  const int n = kgrid.n_tau;
  if (static_cast<int>(g.size()) != n) throw ContractError("sino_t_to_tau: length mismatch");
  std::vector<cdouble> col = g;
  const double scale = 1.0 / (kgrid.dtau() * n);
  for (int m = 0; m < n; ++m) {
    const double sgn = ((m - n / 2) % 2 == 0) ? 1.0 : -1.0;
    col[static_cast<size_t>(m)] *= scale * sgn;
  }
  thread_fft().forward1d(col);
  for (int j = 0; j < n; ++j)
    if (j % 2 != 0) col[static_cast<size_t>(j)] = -col[static_cast<size_t>(j)];
  return col;
}

Sinogram apply_window_in_t(const Sinogram& sino, const KGrid& kgrid) {
  if (sino.n_t() != kgrid.n_tau) throw ContractError("apply_window_in_t: t-grid mismatch");
  Sinogram out = sino;
  std::vector<cdouble> col(static_cast<size_t>(kgrid.n_tau));
  for (int a = 0; a < sino.n_phi(); ++a) {
    for (int m = 0; m < sino.n_t(); ++m) col[static_cast<size_t>(m)] = sino.vals(m, a);
    auto y = sino_t_to_tau(col, kgrid);
    for (int j = 0; j < kgrid.n_tau; ++j)
      y[static_cast<size_t>(j)] *= window_value(kgrid.window, kgrid.tau(j), kgrid.cutoff);
    col = sino_tau_to_t(y, kgrid);
    for (int m = 0; m < sino.n_t(); ++m) out.vals(m, a) = col[static_cast<size_t>(m)];
  }
  return out;
}

Sinogram boundary_average(const SpectralCube& cube, const KGrid& kgrid, cdouble weight) {
  if (cube.domain != CubeDomain::T)
    throw ContractError("boundary_average: cube must be t-domain");
  check_uniform_circle(cube.boundary_points);
  const int nb = static_cast<int>(cube.boundary_points.size());
  const double dtheta = 2.0 * kPi / nb;
  Sinogram sino;
  sino.vals.setZero(cube.n_rad, cube.n_phi);
  sino.t0 = kgrid.t(0);
  sino.dt = kgrid.dt();
  sino.sign = cube.sign;
  sino.weight = weight;
  // (1/2 pi i) sum_b v a(z_b) (i z_b) dtheta = (dtheta / 2 pi) sum_b v a z_b
  const double c = dtheta / (2.0 * kPi);
  for (int a = 0; a < cube.n_phi; ++a)
    for (int m = 0; m < cube.n_rad; ++m) {
      cdouble acc(0.0, 0.0);
      for (int b = 0; b < nb; ++b)
        acc += cube.at(b, m, a) * cube.boundary_points[static_cast<size_t>(b)];
      sino.vals(m, a) = c * weight * acc;
    }
  if (!sino.vals.isFinite().all()) throw ComputeError("boundary_average: NaN/Inf");
  return sino;
}

std::pair<Sinogram, Sinogram> parity_combine(const Sinogram& plus, const Sinogram& minus) {
  if (plus.n_t() != minus.n_t() || plus.n_phi() != minus.n_phi() || plus.t0 != minus.t0 ||
      plus.dt != minus.dt)
    throw ContractError("parity_combine: sinogram grids do not match");
  if (plus.provenance != minus.provenance)
    throw ContractError("parity_combine: provenance mismatch (" + plus.provenance + " vs " +
                        minus.provenance + ")");
  Sinogram odd = plus, even = plus;
  odd.vals = 0.5 * (plus.vals - minus.vals);
  even.vals = 0.5 * (plus.vals + minus.vals);
  odd.sign = 0;
  even.sign = 0;
  odd.provenance = plus.provenance + "/odd";
  even.provenance = plus.provenance + "/even";
  return {std::move(odd), std::move(even)};
}

}  // namespace vhed
