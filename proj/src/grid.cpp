#include "vhed/grid.hpp"

#include <cmath>

#include "vhed/fft.hpp"

namespace vhed {

PeriodicGrid::PeriodicGrid(double side_half, int exponent) : side_half_(side_half) {
  if (exponent < 4 || exponent > 16)
    throw ContractError("make_grid: exponent must be in [4, 16], got " +
                        std::to_string(exponent));
  if (!(side_half > 0.0))
    throw ContractError("make_grid: side_half must be positive");
  n_ = 1 << exponent;
  spacing_ = 2.0 * side_half_ / n_;

  freq_.resize(static_cast<size_t>(n_));
  const double df = kPi / side_half_;
  for (int m = 0; m < n_; ++m) {
    const int signed_m = (m < n_ / 2) ? m : m - n_;
    freq_[static_cast<size_t>(m)] = df * signed_m;
  }

  sym_cauchy_.resize(n_, n_);
  sym_beurling_.resize(n_, n_);
  sym_dbar_.resize(n_, n_);
  sym_d_.resize(n_, n_);
  for (int ix = 0; ix < n_; ++ix) {
    for (int iy = 0; iy < n_; ++iy) {
      const cdouble zeta(freq_[static_cast<size_t>(ix)], freq_[static_cast<size_t>(iy)]);
      const cdouble dbar = 0.5 * kI * zeta;
      const cdouble d = 0.5 * kI * std::conj(zeta);
      sym_dbar_(iy, ix) = dbar;
      sym_d_(iy, ix) = d;
      if (ix == 0 && iy == 0) {
        sym_cauchy_(iy, ix) = 0.0;
        sym_beurling_(iy, ix) = 0.0;
      } else {
        sym_cauchy_(iy, ix) = 1.0 / dbar;
        sym_beurling_(iy, ix) = std::conj(zeta) / zeta;
      }
    }
  }
}

std::shared_ptr<const PeriodicGrid> PeriodicGrid::make(double side_half, int exponent) {
  return std::shared_ptr<const PeriodicGrid>(new PeriodicGrid(side_half, exponent));
}

GridPtr make_grid(double side_half, int exponent) {
  return PeriodicGrid::make(side_half, exponent);
}

namespace {
ComplexField apply_multiplier(const ComplexField& f, const FieldArray& symbol) {
  ComplexField out(f.grid, f.v);
  auto& fft = thread_fft();
  fft.forward(out.v);
  out.v *= symbol;
  fft.inverse(out.v);
  return out;
}
}  // namespace

ComplexField cauchy_apply(const ComplexField& f) {
  return apply_multiplier(f, f.grid->cauchy_symbol());
}
ComplexField beurling_apply(const ComplexField& f) {
  return apply_multiplier(f, f.grid->beurling_symbol());
}
ComplexField dbar_apply(const ComplexField& f) {
  return apply_multiplier(f, f.grid->dbar_symbol());
}
ComplexField d_apply(const ComplexField& f) {
  return apply_multiplier(f, f.grid->d_symbol());
}

double max_abs(const ComplexField& f) { return f.v.abs().maxCoeff(); }

double max_abs_outside_radius(const ComplexField& f, double radius) {
  const int n = f.n();
  const double r2 = radius * radius;
  double worst = 0.0;
  for (int ix = 0; ix < n; ++ix) {
    const double x = f.grid->coord(ix);
    for (int iy = 0; iy < n; ++iy) {
      const double y = f.grid->coord(iy);
      if (x * x + y * y > r2) worst = std::max(worst, std::abs(f.v(iy, ix)));
    }
  }
  return worst;
}

double l2_norm(const ComplexField& f) { return std::sqrt(f.v.abs2().sum()); }

void assert_finite(const ComplexField& f, const char* where) {
  if (!f.v.isFinite().all())
    throw ComputeError(std::string(where) + ": field contains NaN/Inf");
}

cdouble sample_bilinear(const ComplexField& f, double x, double y) {
  const auto& g = *f.grid;
  const double gx = (x + g.side_half()) / g.spacing();
  const double gy = (y + g.side_half()) / g.spacing();
  const int ix0 = static_cast<int>(std::floor(gx));
  const int iy0 = static_cast<int>(std::floor(gy));
  if (ix0 < 0 || iy0 < 0 || ix0 + 1 >= g.n() || iy0 + 1 >= g.n())
    throw ContractError("sample_bilinear: point too close to the torus edge");
  const double fx = gx - ix0, fy = gy - iy0;
  return (1.0 - fx) * (1.0 - fy) * f.v(iy0, ix0) + fx * (1.0 - fy) * f.v(iy0, ix0 + 1) +
         (1.0 - fx) * fy * f.v(iy0 + 1, ix0) + fx * fy * f.v(iy0 + 1, ix0 + 1);
}

BoundaryQuadrature::BoundaryQuadrature(const PeriodicGrid& grid, std::vector<cdouble> points,
                                       double support_radius)
    : points_(std::move(points)), support_radius_(support_radius), n_(grid.n()) {
  const double r2 = support_radius_ * support_radius_;
  for (int ix = 0; ix < n_; ++ix) {
    const double x = grid.coord(ix);
    for (int iy = 0; iy < n_; ++iy) {
      const double y = grid.coord(iy);
      if (x * x + y * y <= r2) cells_.push_back(iy + n_ * ix);
    }
  }
  const double w = grid.cell_area() / kPi;
  kernel_.resize(static_cast<Eigen::Index>(cells_.size()),
                 static_cast<Eigen::Index>(points_.size()));
  for (size_t b = 0; b < points_.size(); ++b) {
    const cdouble zb = points_[b];
    for (size_t c = 0; c < cells_.size(); ++c) {
      const int idx = cells_[c];
      const cdouble z1 = grid.point(idx / n_, idx % n_);
      kernel_(static_cast<Eigen::Index>(c), static_cast<Eigen::Index>(b)) = w / (z1 - zb);
    }
  }
}

std::vector<cdouble> BoundaryQuadrature::trace(const ComplexField& u) const {
  if (u.n() != n_) throw ContractError("BoundaryQuadrature: grid size mismatch");
  const double peak = max_abs(u);
  const double stray = max_abs_outside_radius(u, support_radius_);
  if (stray > std::max(1e-12, 1e-10 * peak))
    throw ContractError("boundary_cauchy_trace: input not supported inside radius " +
                        std::to_string(support_radius_));
  Eigen::VectorXcd ubar(static_cast<Eigen::Index>(cells_.size()));
  const cdouble* data = u.v.data();
  for (size_t c = 0; c < cells_.size(); ++c)
    ubar(static_cast<Eigen::Index>(c)) = std::conj(data[cells_[c]]);
  Eigen::VectorXcd out = kernel_.transpose() * ubar;
  return {out.data(), out.data() + out.size()};
}

std::vector<cdouble> boundary_cauchy_trace(const ComplexField& u,
                                           const std::vector<cdouble>& boundary_points) {
  BoundaryQuadrature bq(*u.grid, boundary_points);
  return bq.trace(u);
}

std::vector<cdouble> unit_circle_points(int count) {
  std::vector<cdouble> pts(static_cast<size_t>(count));
  for (int b = 0; b < count; ++b) {
    const double th = 2.0 * kPi * b / count;
    pts[static_cast<size_t>(b)] = {std::cos(th), std::sin(th)};
  }
  return pts;
}

}  // namespace vhed
