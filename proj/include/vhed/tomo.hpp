#pragma once

#include <vector>

#include "vhed/grid.hpp"
#include "vhed/spectral.hpp"

namespace vhed {

// Line-integral data over lines {x . w(phi) = s}, w(phi) = (cos phi, -sin phi),
// so that s(z) = Re(e^{i phi} z). s uniform on [-s_max, s_max].
struct RadonData {
  Eigen::ArrayXXcd vals;  // (n_s, n_phi)
  double s0 = 0.0;
  double ds = 0.0;
  std::vector<double> phis;

  int n_s() const { return static_cast<int>(vals.rows()); }
  double s(int i) const { return s0 + i * ds; }
};

struct RadonGrid {
  double s_max = 1.2;
  int n_s = 257;
  double du = 0.0;  // line quadrature step; 0 = a quarter of the field spacing

  double ds() const { return 2.0 * s_max / (n_s - 1); }
};

// Bilinear-interpolated line quadrature. f must be compactly supported in the
// unit disc.
RadonData radon(const ComplexField& f, const RadonGrid& rg, const std::vector<double>& phis);

// Exact adjoint of the discrete radon map (splat transpose), for the
// inner-product certificate and as the back-projection core.
ComplexField radon_adjoint(const RadonData& data, const RadonGrid& rg, const GridPtr& grid);

// First-order forward map through the Radon relation:
//   T1a(t, phi) = K * e^{-i phi} (d/ds R mu)(t/2, phi),  K = -i pi / sqrt(2).
// This is the independent oracle for the Neumann-term-1 averaged sinogram
// (window not applied; use apply_window_in_t to match a windowed sweep).
inline constexpr cdouble kOracleConstant{0.0, -2.221441469079183};  // -i pi / sqrt 2

struct T1aOptions {
  RadonGrid rgrid;
  cdouble constant = kOracleConstant;
};

Sinogram forward_T1a(const ComplexField& mu, const KGrid& kgrid, const T1aOptions& opts = {});

// Exact adjoint of forward_T1a (transposes quadrature, differences, resampling
// and the phase factor) under the unweighted Euclidean inner products.
ComplexField forward_T1a_adjoint(const Sinogram& sino, const KGrid& kgrid, const GridPtr& grid,
                                 const T1aOptions& opts = {});

// Multiply the t-spectrum of each column by |tau|^p; zero frequency maps to 0
// for p != 0 and to 1 for p = 0.
Sinogram abs_fourier_filter(const Sinogram& sino, double p);

// Weighted filtered back-projection: undo the Radon relation (strip constant
// and e^{-i phi}, s = t/2), Hilbert filter in s, back-project over [0, pi).
// Input must be in oracle normalization (calibrated).
ComplexField fbp_invert(const Sinogram& sino, const GridPtr& grid,
                        cdouble constant = kOracleConstant);

// Lambda-tomography variant: same chain without |D_t|^{-1}, i.e. filter
// -i sigma instead of -i sgn(sigma); reconstructs |D| mu (edge map).
ComplexField lambda_invert(const Sinogram& sino, const GridPtr& grid,
                           cdouble constant = kOracleConstant);

struct Calibration {
  cdouble constant{1.0, 0.0};  // multiply pipeline sinograms by this
  double fit_residual = 1.0;   // relative L2 misfit after calibration
};

// Least-squares complex scalar c with oracle ~= c * pipeline, both windowed.
Calibration calibrate_constant(const Sinogram& pipeline_term1, const Sinogram& oracle_windowed);

double relative_l2(const Eigen::ArrayXXcd& a, const Eigen::ArrayXXcd& ref);

}  // namespace vhed
