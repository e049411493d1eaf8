#pragma once

#include <memory>
#include <vector>

#include "vhed/types.hpp"

namespace vhed {

// Square computational torus [-s, s)^2 with n = 2^exponent samples per axis.
// Owns the frequency table and the Fourier-multiplier symbols for the
// Cauchy transform P, Beurling transform S and the derivatives dbar, d.
// Convention: forward DFT e^{-i xi.x}; frequencies xi = (pi/s) * m with
// signed integer m in [-n/2, n/2). zeta = xi_x + i*xi_y, dbar -> (i/2) zeta,
// d -> (i/2) conj(zeta), P -> -2i/zeta (0 at zeta = 0), S -> conj(zeta)/zeta
// (0 at zeta = 0). Immutable after construction; shareable across workers.
class PeriodicGrid {
 public:
  static std::shared_ptr<const PeriodicGrid> make(double side_half, int exponent);

  int n() const { return n_; }
  double side_half() const { return side_half_; }
  double spacing() const { return spacing_; }
  double cell_area() const { return spacing_ * spacing_; }

  double coord(int idx) const { return -side_half_ + spacing_ * idx; }
  cdouble point(int ix, int iy) const { return {coord(ix), coord(iy)}; }
  double freq(int idx) const { return freq_[static_cast<size_t>(idx)]; }

  const FieldArray& cauchy_symbol() const { return sym_cauchy_; }
  const FieldArray& beurling_symbol() const { return sym_beurling_; }
  const FieldArray& dbar_symbol() const { return sym_dbar_; }
  const FieldArray& d_symbol() const { return sym_d_; }

 private:
  PeriodicGrid(double side_half, int exponent);

  double side_half_;
  int n_;
  double spacing_;
  std::vector<double> freq_;
  FieldArray sym_cauchy_, sym_beurling_, sym_dbar_, sym_d_;
};

using GridPtr = std::shared_ptr<const PeriodicGrid>;

GridPtr make_grid(double side_half, int exponent);

// Complex-valued function sampled on the grid; v(iy, ix) = f(x_ix + i*y_iy).
struct ComplexField {
  GridPtr grid;
  FieldArray v;

  ComplexField() = default;
  explicit ComplexField(GridPtr g) : grid(std::move(g)) {
    v = FieldArray::Zero(grid->n(), grid->n());
  }
  ComplexField(GridPtr g, FieldArray values) : grid(std::move(g)), v(std::move(values)) {}

  int n() const { return grid->n(); }
};

// Spectral operator applications (pure; input untouched). Zero frequency of
// P and S maps to 0.
ComplexField cauchy_apply(const ComplexField& f);
ComplexField beurling_apply(const ComplexField& f);
ComplexField dbar_apply(const ComplexField& f);
ComplexField d_apply(const ComplexField& f);

double max_abs(const ComplexField& f);
double max_abs_outside_radius(const ComplexField& f, double radius);
double l2_norm(const ComplexField& f);
void assert_finite(const ComplexField& f, const char* where);

// Bilinear interpolation at an interior point (no periodic wrap; the point
// must be at least one cell away from the torus edge).
cdouble sample_bilinear(const ComplexField& f, double x, double y);

// Direct (non-periodic) quadrature of the Cauchy kernel at points off the
// support: returns omega(z_b) = -P(conj(u))(z_b) = (1/pi) sum_cells
// conj(u)(z1)/(z1 - z_b) h^2. Precomputes the kernel for a fixed point set so
// sweeps can reuse it. Cells outside |z| <= support_radius are excluded from
// the sum (and u is asserted negligible there).
class BoundaryQuadrature {
 public:
  BoundaryQuadrature(const PeriodicGrid& grid, std::vector<cdouble> points,
                     double support_radius = 0.995);

  // u must vanish outside the support disc: max |u| there below
  // max(1e-12, 1e-10 * max|u|).
  std::vector<cdouble> trace(const ComplexField& u) const;

  const std::vector<cdouble>& points() const { return points_; }

 private:
  std::vector<cdouble> points_;
  double support_radius_;
  std::vector<int> cells_;                // linear indices iy + n*ix of support cells
  Eigen::MatrixXcd kernel_;               // (cells, points): (1/pi) h^2 / (z1 - z_b)
  int n_;
};

// One-shot form of the above (builds the quadrature internally).
std::vector<cdouble> boundary_cauchy_trace(const ComplexField& u,
                                           const std::vector<cdouble>& boundary_points);

std::vector<cdouble> unit_circle_points(int count);

}  // namespace vhed
