#include "vhed/singpred.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace vhed {

InterfaceCurve InterfaceCurve::circle(cdouble c, double r) {
  InterfaceCurve ic;
  ic.kind = Kind::Circle;
  ic.center = c;
  ic.radius = r;
  return ic;
}

InterfaceCurve InterfaceCurve::ellipse(cdouble c, double a, double b, double rot) {
  InterfaceCurve ic;
  ic.kind = Kind::Ellipse;
  ic.center = c;
  ic.semi_major = a;
  ic.semi_minor = b;
  ic.rotation = rot;
  return ic;
}

InterfaceCurve InterfaceCurve::polyline(std::vector<cdouble> pts) {
  InterfaceCurve ic;
  ic.kind = Kind::Polyline;
  ic.vertices = std::move(pts);
  return ic;
}

std::vector<NormalPoint> normal_points(const InterfaceCurve& curve, double phi,
                                       double flat_tol) {
  std::vector<NormalPoint> out;
  const cdouble target = std::polar(1.0, -phi);  // e^{-i phi}
  switch (curve.kind) {
    case InterfaceCurve::Kind::Circle: {
      out.push_back({curve.center + curve.radius * target, +1, false});
      out.push_back({curve.center - curve.radius * target, -1, false});
      break;
    }
    case InterfaceCurve::Kind::Ellipse: {
      // q(theta) = c + e^{i rot}(a cos theta + i b sin theta); the outward
      // normal direction is e^{i rot}(b cos theta + i a sin theta). Normal
      // parallel to e^{-i phi} iff Im(e^{i(rot+phi)}(b cos + i a sin)) = 0,
      // solved in closed form.
      const double a = curve.semi_major, b = curve.semi_minor;
      const double psi = curve.rotation + phi;
      const double theta0 = std::atan2(-b * std::sin(psi), a * std::cos(psi));
      for (double theta : {theta0, theta0 + kPi}) {
        const cdouble q = curve.center + std::polar(1.0, curve.rotation) *
                                             cdouble(a * std::cos(theta), b * std::sin(theta));
        const cdouble nn = std::polar(1.0, curve.rotation) *
                           cdouble(b * std::cos(theta), a * std::sin(theta));
        const int sign = (nn.real() * target.real() + nn.imag() * target.imag()) > 0 ? +1 : -1;
        out.push_back({q, sign, false});
      }
      break;
    }
    case InterfaceCurve::Kind::Polyline: {
      const size_t n = curve.vertices.size();
      if (n < 2) break;
      for (size_t i = 0; i + 1 < n; ++i) {
        const cdouble p0 = curve.vertices[i], p1 = curve.vertices[i + 1];
        const cdouble tangent = (p1 - p0) / std::abs(p1 - p0);
        const cdouble normal = tangent * cdouble(0.0, -1.0);
        const double cross = normal.real() * target.imag() - normal.imag() * target.real();
        if (std::abs(cross) <= flat_tol) {
          const double dot = normal.real() * target.real() + normal.imag() * target.imag();
          out.push_back({0.5 * (p0 + p1), dot > 0 ? +1 : -1, true});
        }
      }
      break;
    }
  }
  return out;
}

namespace {

void dedup_sorted(std::vector<double>& v, double tol) {
  std::sort(v.begin(), v.end());
  std::vector<double> keep;
  for (double x : v) {
    if (keep.empty() || x - keep.back() > tol) keep.push_back(x);
  }
  v.swap(keep);
}

}  // namespace

SingularityLadder predict_first_order(const InterfaceCurve& curve,
                                      const std::vector<double>& phis) {
  SingularityLadder lad;
  lad.order = 1;
  lad.phis = phis;
  for (double phi : phis) {
    std::vector<double> ts;
    const cdouble e = std::polar(1.0, phi);
    for (const auto& np : normal_points(curve, phi))
      ts.push_back(2.0 * (e * np.z).real());
    dedup_sorted(ts, 1e-12);
    lad.t_values.push_back(std::move(ts));
  }
  return lad;
}

SingularityLadder predict_sc(const InterfaceCurve& curve, int m, const std::vector<double>& phis,
                             double dedup_tol) {
  return predict_sc(std::vector<InterfaceCurve>{curve}, m, phis, dedup_tol);
}

SingularityLadder predict_sc(const std::vector<InterfaceCurve>& curves, int m,
                             const std::vector<double>& phis, double dedup_tol) {
  if (m < 0 || m > 5) throw ContractError("predict_sc: order must be in [0, 5]");
  SingularityLadder lad;
  lad.order = m;
  lad.phis = phis;
  for (double phi : phis) {
    std::vector<double> ts;
    if (m == 0) {
      ts.push_back(0.0);
    } else {
      std::vector<NormalPoint> nps;
      for (const auto& curve : curves) {
        const auto cur = normal_points(curve, phi);
        nps.insert(nps.end(), cur.begin(), cur.end());
      }
      const cdouble e = std::polar(1.0, phi);
      const size_t count = nps.size();
      if (count > 0) {
        std::vector<size_t> idx(static_cast<size_t>(m), 0);
        for (;;) {
          cdouble alt(0.0, 0.0);
          for (int j = 0; j < m; ++j) {
            const double sgn = (j % 2 == 0) ? 1.0 : -1.0;  // z1 - z2 + z3 ...
            alt += sgn * nps[idx[static_cast<size_t>(j)]].z;
          }
          const double flip = (m % 2 == 0) ? -1.0 : 1.0;  // (-1)^(m+1)
          ts.push_back(flip * 2.0 * (e * alt).real());
          int pos = m - 1;
          while (pos >= 0) {
            if (++idx[static_cast<size_t>(pos)] < count) break;
            idx[static_cast<size_t>(pos)] = 0;
            --pos;
          }
          if (pos < 0) break;
        }
      }
      dedup_sorted(ts, dedup_tol);
    }
    lad.t_values.push_back(std::move(ts));
  }
  return lad;
}

std::vector<DetectedPeak> peak_detect_full(const Sinogram& sino, int phi_index,
                                           double threshold, double min_prominence) {
  std::vector<DetectedPeak> peaks;
  const int n = sino.n_t();
  Eigen::ArrayXd mag = sino.vals.col(phi_index).abs();
  const double scale = mag.maxCoeff();
  const double cutoff = threshold * scale;
  if (!(cutoff > 0.0)) return peaks;
  for (int i = 1; i + 1 < n; ++i) {
    if (mag(i) < cutoff) continue;
    if (mag(i) < mag(i - 1) || mag(i) <= mag(i + 1)) continue;
    // prominence: drop to the lowest valley on the way to a higher sample,
    // per side; the smaller rise of the two
    double valley_l = mag(i), valley_r = mag(i);
    double low = mag(i);
    for (int j = i - 1; j >= 0; --j) {
      low = std::min(low, mag(j));
      if (mag(j) > mag(i)) break;
      valley_l = low;
    }
    low = mag(i);
    for (int j = i + 1; j < n; ++j) {
      low = std::min(low, mag(j));
      if (mag(j) > mag(i)) break;
      valley_r = low;
    }
    const double prominence = mag(i) - std::max(valley_l, valley_r);
    if (prominence < min_prominence * scale) continue;
    const double denom = mag(i - 1) - 2.0 * mag(i) + mag(i + 1);
    double delta = 0.0;
    if (denom < 0.0) delta = 0.5 * (mag(i - 1) - mag(i + 1)) / denom;
    peaks.push_back({sino.t(i) + delta * sino.dt, mag(i), prominence});
  }
  return peaks;
}

std::vector<double> peak_detect(const Sinogram& sino, int phi_index, double threshold) {
  std::vector<double> ts;
  for (const auto& p : peak_detect_full(sino, phi_index, threshold)) ts.push_back(p.t);
  return ts;
}

std::vector<std::array<double, 3>> ladder_rows(const SingularityLadder& ladder) {
  std::vector<std::array<double, 3>> rows;
  for (size_t a = 0; a < ladder.phis.size(); ++a)
    for (double t : ladder.t_values[a])
      rows.push_back({static_cast<double>(ladder.order), ladder.phis[a], t});
  return rows;
}

}  // namespace vhed
