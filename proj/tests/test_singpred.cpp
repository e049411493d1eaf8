#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "vhed/singpred.hpp"

using namespace vhed;

namespace {

// brute-force oracle for the circle scattering sets: enumerate sign tuples in
// the alternating sum directly
std::vector<double> circle_sc_oracle(cdouble center, double rho, int m, double phi) {
  std::vector<double> ts;
  if (m == 0) return {0.0};
  const cdouble e = std::polar(1.0, phi);
  const cdouble n = std::polar(1.0, -phi);
  const int tuples = 1 << m;
  for (int mask = 0; mask < tuples; ++mask) {
    cdouble alt(0.0, 0.0);
    for (int j = 0; j < m; ++j) {
      const double s = (mask >> j) & 1 ? 1.0 : -1.0;
      const cdouble zj = center + s * rho * n;
      alt += ((j % 2 == 0) ? 1.0 : -1.0) * zj;
    }
    const double flip = (m % 2 == 0) ? -1.0 : 1.0;
    ts.push_back(flip * 2.0 * (e * alt).real());
  }
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end(),
                       [](double a, double b) { return std::abs(a - b) < 1e-9; }),
           ts.end());
  return ts;
}

bool sets_match(const std::vector<double>& a, const std::vector<double>& b, double tol) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i)
    if (std::abs(a[i] - b[i]) > tol) return false;
  return true;
}

}  // namespace

TEST_CASE("circle normal points: radial normals, translation equivariance") {
  const auto np0 = normal_points(InterfaceCurve::circle(0.0, 0.2), 0.0);
  REQUIRE(np0.size() == 2);
  CHECK(std::abs(np0[0].z - cdouble(0.2, 0.0)) < 1e-15);
  CHECK(std::abs(np0[1].z - cdouble(-0.2, 0.0)) < 1e-15);

  const cdouble zc(0.3, -0.2);
  for (double phi : {0.0, 0.7, 2.1}) {
    const auto base = normal_points(InterfaceCurve::circle(0.0, 0.2), phi);
    const auto moved = normal_points(InterfaceCurve::circle(zc, 0.2), phi);
    for (size_t i = 0; i < 2; ++i) CHECK(std::abs(moved[i].z - (base[i].z + zc)) < 1e-14);
  }
}

TEST_CASE("ellipse normal points solve the normal equation") {
  const InterfaceCurve e = InterfaceCurve::ellipse(0.0, 0.6, 0.3, 0.0);
  const auto at0 = normal_points(e, 0.0);
  REQUIRE(at0.size() == 2);
  CHECK(std::abs(std::abs(at0[0].z.real()) - 0.6) < 1e-12);  // major axis
  CHECK(std::abs(at0[0].z.imag()) < 1e-12);

  // generic angles: the implicit-gradient normal must be parallel to e^{-i phi}
  const InterfaceCurve rot = InterfaceCurve::ellipse(cdouble(0.1, 0.05), 0.5, 0.25, 0.6);
  for (double phi : {0.3, 1.1, 2.5}) {
    const auto nps = normal_points(rot, phi);
    REQUIRE(nps.size() == 2);
    for (const auto& np : nps) {
      // gradient of ((X/a)^2 + (Y/b)^2) in the ellipse frame, rotated back
      const cdouble w = (np.z - rot.center) * std::polar(1.0, -rot.rotation);
      const cdouble grad_frame(2.0 * w.real() / (0.5 * 0.5), 2.0 * w.imag() / (0.25 * 0.25));
      const cdouble grad = grad_frame * std::polar(1.0, rot.rotation);
      const cdouble target = std::polar(1.0, -phi);
      const double cross =
          grad.real() * target.imag() - grad.imag() * target.real();
      CHECK(std::abs(cross) / std::abs(grad) < 1e-10);
    }
  }
}

TEST_CASE("polyline flat segments match with a tolerance flag") {
  // square: normals along the axes
  const std::vector<cdouble> square = {{0.3, 0.3}, {-0.3, 0.3}, {-0.3, -0.3},
                                       {0.3, -0.3}, {0.3, 0.3}};
  const auto nps = normal_points(InterfaceCurve::polyline(square), 0.0);
  REQUIRE(nps.size() == 2);  // the two vertical edges
  CHECK(nps[0].from_flat);
  CHECK(std::abs(std::abs(nps[0].z.real()) - 0.3) < 1e-14);
  CHECK(normal_points(InterfaceCurve::polyline(square), 0.4).empty());
}

TEST_CASE("first-order ladder: t = 2 Re(e^{i phi} z1)") {
  const std::vector<double> phis = {0.0, 0.5, 1.2, 2.8};
  const SingularityLadder lad =
      predict_first_order(InterfaceCurve::circle(0.0, 0.2), phis);
  for (const auto& ts : lad.t_values) {
    REQUIRE(ts.size() == 2);
    CHECK(ts[0] == doctest::Approx(-0.4).epsilon(1e-12));
    CHECK(ts[1] == doctest::Approx(0.4).epsilon(1e-12));
  }

  const cdouble zc(0.25, 0.1);
  const SingularityLadder moved =
      predict_first_order(InterfaceCurve::circle(zc, 0.2), phis);
  for (size_t a = 0; a < phis.size(); ++a) {
    const double shift = 2.0 * (std::polar(1.0, phis[a]) * zc).real();
    CHECK(moved.t_values[a][0] == doctest::Approx(shift - 0.4).epsilon(1e-12));
    CHECK(moved.t_values[a][1] == doctest::Approx(shift + 0.4).epsilon(1e-12));
  }
}

TEST_CASE("scattering-set ladders match the brute-force oracle and frozen sets") {
  const std::vector<double> phis = {0.0, 0.9};
  const InterfaceCurve circle = InterfaceCurve::circle(0.0, 0.2);

  const SingularityLadder m0 = predict_sc(circle, 0, phis, 1e-6);
  CHECK(sets_match(m0.t_values[0], {0.0}, 1e-12));

  const SingularityLadder m2 = predict_sc(circle, 2, phis, 1e-6);
  CHECK(sets_match(m2.t_values[0], {-0.8, 0.0, 0.8}, 1e-12));
  CHECK(sets_match(m2.t_values[0], circle_sc_oracle(0.0, 0.2, 2, phis[0]), 1e-12));

  const SingularityLadder m3 = predict_sc(circle, 3, phis, 1e-6);
  CHECK(sets_match(m3.t_values[0], {-1.2, -0.4, 0.4, 1.2}, 1e-12));
  for (size_t a = 0; a < phis.size(); ++a)
    CHECK(sets_match(m3.t_values[a], circle_sc_oracle(0.0, 0.2, 3, phis[a]), 1e-12));

  CHECK_THROWS_AS(predict_sc(circle, 6, phis, 1e-6), ContractError);
}

TEST_CASE("even-order ladders are translation invariant, odd ones shift") {
  const std::vector<double> phis = {0.4};
  const InterfaceCurve a = InterfaceCurve::circle(0.0, 0.2);
  const InterfaceCurve b = InterfaceCurve::circle(cdouble(0.2, -0.15), 0.2);
  const SingularityLadder a2 = predict_sc(a, 2, phis, 1e-9);
  const SingularityLadder b2 = predict_sc(b, 2, phis, 1e-9);
  CHECK(sets_match(a2.t_values[0], b2.t_values[0], 1e-12));

  const SingularityLadder a1 = predict_sc(a, 1, phis, 1e-9);
  const SingularityLadder b1 = predict_sc(b, 1, phis, 1e-9);
  const double shift = 2.0 * (std::polar(1.0, phis[0]) * cdouble(0.2, -0.15)).real();
  REQUIRE(a1.t_values[0].size() == b1.t_values[0].size());
  for (size_t i = 0; i < a1.t_values[0].size(); ++i)
    CHECK(b1.t_values[0][i] == doctest::Approx(a1.t_values[0][i] + shift).epsilon(1e-12));
}

TEST_CASE("nested circles give the four first-order t values") {
  const std::vector<InterfaceCurve> curves = {InterfaceCurve::circle(0.0, 0.4),
                                              InterfaceCurve::circle(0.0, 0.6)};
  const SingularityLadder lad = predict_sc(curves, 1, {0.0}, 1e-9);
  CHECK(sets_match(lad.t_values[0], {-1.2, -0.8, 0.8, 1.2}, 1e-12));
}

TEST_CASE("peak_detect: sub-cell refinement on a synthetic spike, empty on zero") {
  Sinogram s;
  const int n = 128;
  s.vals.setZero(n, 1);
  s.t0 = -3.0;
  s.dt = 6.0 / n;
  const double t0 = 0.73;
  for (int m = 0; m < n; ++m) {
    const double d = (s.t(m) - t0) / 0.15;
    s.vals(m, 0) = std::exp(-d * d);
  }
  const auto peaks = peak_detect(s, 0, 0.3);
  REQUIRE(peaks.size() == 1);
  CHECK(std::abs(peaks[0] - t0) < 0.3 * s.dt);

  Sinogram z = s;
  z.vals.setZero();
  CHECK(peak_detect(z, 0, 0.3).empty());
}

TEST_CASE("prominence filtering drops flank ripples but keeps isolated peaks") {
  Sinogram s;
  const int n = 256;
  s.vals.setZero(n, 1);
  s.t0 = -3.0;
  s.dt = 6.0 / n;
  for (int m = 0; m < n; ++m) {
    const double t = s.t(m);
    const double main = std::exp(-std::pow((t - 1.0) / 0.2, 2));
    const double ripple = 0.15 * std::exp(-std::pow((t - 0.7) / 0.03, 2));
    const double isolated = 0.2 * std::exp(-std::pow((t + 1.5) / 0.1, 2));
    s.vals(m, 0) = main + ripple + isolated;  // ripple rides the main flank
  }
  const auto all = peak_detect_full(s, 0, 0.05, 0.0);
  CHECK(all.size() == 3);
  const auto prominent = peak_detect_full(s, 0, 0.05, 0.12);
  REQUIRE(prominent.size() == 2);
  CHECK(std::abs(prominent[0].t + 1.5) < s.dt);  // isolated survives
  CHECK(std::abs(prominent[1].t - 1.0) < s.dt);  // main survives
}
