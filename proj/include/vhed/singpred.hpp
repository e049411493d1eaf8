#pragma once

#include <array>
#include <vector>

#include "vhed/spectral.hpp"
#include "vhed/types.hpp"

namespace vhed {

// Parametrized jump interface used by the singularity predictor. Circle and
// ellipse carry analytic normals; polylines match flat segments within an
// angular tolerance.
struct InterfaceCurve {
  enum class Kind { Circle, Ellipse, Polyline };
  Kind kind = Kind::Circle;

  cdouble center{0.0, 0.0};
  double radius = 0.0;        // circle
  double semi_major = 0.0;    // ellipse
  double semi_minor = 0.0;    // ellipse
  double rotation = 0.0;      // ellipse
  std::vector<cdouble> vertices;  // polyline (closed if first == last)

  static InterfaceCurve circle(cdouble c, double r);
  static InterfaceCurve ellipse(cdouble c, double a, double b, double rot);
  static InterfaceCurve polyline(std::vector<cdouble> pts);
};

struct NormalPoint {
  cdouble z;
  int sign = +1;        // +1: outward normal equals e^{-i phi}; -1: opposite
  bool from_flat = false;  // polyline flat-segment match (tolerance flag)
};

// Points of the curve whose unit normal is +-e^{-i phi}.
std::vector<NormalPoint> normal_points(const InterfaceCurve& curve, double phi,
                                       double flat_tol = 1e-9);

// Predicted t values per order m and angle: the scattering-set ladder.
struct SingularityLadder {
  int order = 0;
  std::vector<double> phis;
  std::vector<std::vector<double>> t_values;  // one sorted set per angle
};

// m = 1 trace: t = 2 Re(e^{i phi} z1) over normal points.
SingularityLadder predict_first_order(const InterfaceCurve& curve,
                                      const std::vector<double>& phis);

// Scattering set of order m for the jump-interface wave-front model (both
// covector signs at every normal point): t = (-1)^(m+1) 2 Re(e^{i phi}
// (z1 - z2 + ... + (-1)^(m+1) z_m)) over m-tuples of normal points,
// deduplicated within dedup_tol. m = 0 yields {0}. m <= 5.
SingularityLadder predict_sc(const InterfaceCurve& curve, int m, const std::vector<double>& phis,
                             double dedup_tol);

// Multi-interface variant: tuples may mix normal points of different curves
// (inter-interface scattering).
SingularityLadder predict_sc(const std::vector<InterfaceCurve>& curves, int m,
                             const std::vector<double>& phis, double dedup_tol);

// Local maxima of |column| above threshold * max, with quadratic sub-cell
// refinement. Returns refined t values.
std::vector<double> peak_detect(const Sinogram& sino, int phi_index, double threshold);

struct DetectedPeak {
  double t;
  double amplitude;
  double prominence;  // rise above the higher of the two flanking saddles
};

// min_prominence (same units as threshold: fraction of column max) filters
// ripples riding on the flanks of stronger features; 0 keeps every local
// maximum above the threshold.
std::vector<DetectedPeak> peak_detect_full(const Sinogram& sino, int phi_index,
                                           double threshold, double min_prominence = 0.0);

// Export helper: rows (order, phi, t) for ladder overlays.
std::vector<std::array<double, 3>> ladder_rows(const SingularityLadder& ladder);

}  // namespace vhed
