#pragma once

#include <string>
#include <vector>

#include "vhed/beltrami.hpp"
#include "vhed/grid.hpp"

namespace vhed {

enum class Window { Rectangular, Hann, Blackman };
Window window_from_name(const std::string& name);
std::string window_name(Window w);
double window_value(Window w, double tau, double cutoff);

// Polar grid in the spectral parameter k = tau e^{i phi}: tau uniform on
// [-R, R) (endpoint-exclusive, tau = 0 on the grid), phi uniform on [0, pi).
// The t-grid is the DFT-dual of the tau-grid: t_m = (m - n_tau/2) dt with
// dt = 2 pi / (n_tau dtau).
struct KGrid {
  double cutoff = 60.0;  // R
  int n_tau = 128;       // power of two
  int n_phi = 32;
  Window window = Window::Blackman;

  double dtau() const { return 2.0 * cutoff / n_tau; }
  double tau(int j) const { return -cutoff + j * dtau(); }
  double phi(int a) const { return kPi * a / n_phi; }
  double dt() const { return 2.0 * kPi / (n_tau * dtau()); }
  double t(int m) const { return (m - n_tau / 2) * dt(); }
  void validate() const;
};

enum class CubeDomain { Tau, T };

// omega traces on boundary points x radial spectral grid x angle grid.
// Values stored radial-contiguous per (angle, boundary) pair.
struct SpectralCube {
  std::vector<cdouble> boundary_points;
  int n_rad = 0;
  int n_phi = 0;
  CubeDomain domain = CubeDomain::Tau;
  int sign = +1;  // +1 / -1 / 0 (0: parity combination or derived data)
  std::vector<cdouble> data;

  cdouble& at(int b, int r, int a) {
    return data[(static_cast<size_t>(a) * boundary_points.size() + static_cast<size_t>(b)) *
                    static_cast<size_t>(n_rad) +
                static_cast<size_t>(r)];
  }
  const cdouble& at(int b, int r, int a) const {
    return const_cast<SpectralCube*>(this)->at(b, r, a);
  }
};

// Boundary-averaged transform on the (t, phi) grid.
struct Sinogram {
  Eigen::ArrayXXcd vals;  // (n_t, n_phi)
  double t0 = 0.0;
  double dt = 0.0;
  int sign = 0;
  cdouble weight{0.0, 0.0};
  std::string provenance;  // "full" or "term-n"

  int n_t() const { return static_cast<int>(vals.rows()); }
  int n_phi() const { return static_cast<int>(vals.cols()); }
  double t(int m) const { return t0 + m * dt; }
};

struct SweepOptions {
  CgoOptions solver;
  bool warm_start = true;
  int workers = 1;
  bool verbose = false;
  int neumann_order = 0;  // 0: full solve; n>0: collect Neumann terms 1..n
};

// Boundary traces of omega^{sign}(z_b, tau_i e^{i phi_a}) for every requested
// sign. tau = 0 rows are exactly zero. With neumann_order = n > 0 the result
// holds, for each sign, the traces of scattering terms 1..n instead
// (result order: sign-major, then term).
std::vector<SpectralCube> sweep(const ComplexField& mu, const KGrid& kgrid,
                                const std::vector<cdouble>& boundary_points,
                                const std::vector<int>& signs, const SweepOptions& opts = {});

// Windowed partial Fourier transform tau -> t with kernel e^{+i t tau},
// Riemann factor dtau. Output tagged t-domain on the dual grid.
SpectralCube partial_ft(const SpectralCube& cube, const KGrid& kgrid);

// Exact inverses of the unwindowed partial FT map, used to apply the sweep
// window to t-domain data from another route (the Radon oracle).
std::vector<cdouble> sino_t_to_tau(const std::vector<cdouble>& g, const KGrid& kgrid);
std::vector<cdouble> sino_tau_to_t(const std::vector<cdouble>& y, const KGrid& kgrid);
Sinogram apply_window_in_t(const Sinogram& sino, const KGrid& kgrid);

// Trapezoidal complex contour integral over the uniform boundary circle:
// (1/2 pi i) sum_b cube(z_b, t, phi) a(z_b) (i z_b) dtheta.
Sinogram boundary_average(const SpectralCube& cube, const KGrid& kgrid, cdouble weight);

// odd = (plus - minus)/2, even = (plus + minus)/2.
std::pair<Sinogram, Sinogram> parity_combine(const Sinogram& plus, const Sinogram& minus);

}  // namespace vhed
