#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <set>

#include "doctest.h"
#include "vhed/io.hpp"
#include "vhed/phantom.hpp"

using namespace vhed;

namespace {

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST_CASE("array file round trip is bit exact") {
  Sinogram s;
  s.vals.resize(16, 4);
  s.t0 = -0.8;
  s.dt = 0.1;
  s.weight = cdouble(0.7, -0.1);
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  for (int m = 0; m < 16; ++m)
    for (int a = 0; a < 4; ++a) s.vals(m, a) = cdouble(uni(rng), uni(rng));

  const std::string path = temp_path("vhed_sino_test.vhed");
  io::write_array(path, io::from_sinogram(s));
  const std::string bytes1 = slurp(path);
  const Sinogram back = io::to_sinogram(io::read_array(path));
  CHECK((back.vals - s.vals).abs().maxCoeff() == 0.0);
  CHECK(back.t0 == s.t0);
  CHECK(back.dt == doctest::Approx(s.dt).epsilon(1e-15));
  io::write_array(path, io::from_sinogram(back));
  CHECK(slurp(path) == bytes1);
  std::remove(path.c_str());
}

TEST_CASE("field and cube conversions preserve values and tags") {
  const GridPtr g = make_grid(2.0, 4);
  ComplexField f(g);
  for (int ix = 0; ix < g->n(); ++ix)
    for (int iy = 0; iy < g->n(); ++iy) f.v(iy, ix) = cdouble(ix, iy);
  const ComplexField fb = io::to_field(io::from_field(f), g);
  CHECK((fb.v - f.v).abs().maxCoeff() == 0.0);

  KGrid kg;
  kg.cutoff = 10.0;
  kg.n_tau = 8;
  kg.n_phi = 2;
  SpectralCube c;
  c.boundary_points = unit_circle_points(4);
  c.n_rad = 8;
  c.n_phi = 2;
  c.sign = -1;
  c.domain = CubeDomain::Tau;
  c.data.resize(4 * 8 * 2);
  for (size_t i = 0; i < c.data.size(); ++i) c.data[i] = cdouble(static_cast<double>(i), -1.0);
  const std::string path = temp_path("vhed_cube_test.vhed");
  io::write_array(path, io::from_cube(c, kg));
  const SpectralCube cb = io::to_cube(io::read_array(path));
  CHECK(cb.sign == -1);
  CHECK(cb.domain == CubeDomain::Tau);
  CHECK(cb.n_rad == 8);
  bool same = true;
  for (int b = 0; b < 4; ++b)
    for (int r = 0; r < 8; ++r)
      for (int a = 0; a < 2; ++a) same = same && (cb.at(b, r, a) == c.at(b, r, a));
  CHECK(same);
  std::remove(path.c_str());
}

TEST_CASE("float64 arrays round trip") {
  io::ArrayData a;
  a.dtype = io::Dtype::Float64;
  a.axes = {{"r", 5, 0.0, 1.0}};
  a.f64 = {1.0, 2.5, -3.0, 0.125, 9.75};
  const std::string path = temp_path("vhed_f64_test.vhed");
  io::write_array(path, a);
  const io::ArrayData b = io::read_array(path);
  CHECK(b.dtype == io::Dtype::Float64);
  CHECK(b.f64 == a.f64);
  CHECK(b.axes[0].name == "r");
  std::remove(path.c_str());
}

TEST_CASE("convention-id mismatch is rejected on read-back") {
  KGrid kg;
  kg.cutoff = 10.0;
  kg.n_tau = 8;
  kg.n_phi = 2;
  SpectralCube c;
  c.boundary_points = unit_circle_points(4);
  c.n_rad = 8;
  c.n_phi = 2;
  c.data.assign(4 * 8 * 2, cdouble(1.0, 0.0));
  io::ArrayData a = io::from_cube(c, kg);
  a.convention = 999;
  const std::string path = temp_path("vhed_conv_test.vhed");
  io::write_array(path, a);
  CHECK_THROWS_AS(io::to_cube(io::read_array(path)), io::FormatError);
  std::remove(path.c_str());
}

TEST_CASE("malformed files raise distinct errors") {
  const std::string path = temp_path("vhed_bad_test.vhed");
  Sinogram s;
  s.vals.setZero(4, 2);
  s.t0 = 0.0;
  s.dt = 1.0;
  io::write_array(path, io::from_sinogram(s));
  std::string bytes = slurp(path);

  {
    std::string bad = bytes;
    bad[0] = 'X';
    std::ofstream(path, std::ios::binary | std::ios::trunc) << bad;
    CHECK_THROWS_AS(io::read_array(path), io::FormatError);
  }
  {
    std::string bad = bytes;
    bad[4] = 77;  // version
    std::ofstream(path, std::ios::binary | std::ios::trunc) << bad;
    CHECK_THROWS_AS(io::read_array(path), io::VersionError);
  }
  {
    std::string bad = bytes;
    bad[6] = 9;  // dtype tag
    std::ofstream(path, std::ios::binary | std::ios::trunc) << bad;
    CHECK_THROWS_AS(io::read_array(path), io::DtypeError);
  }
  {
    std::string bad = bytes.substr(0, bytes.size() - 5);
    std::ofstream(path, std::ios::binary | std::ios::trunc) << bad;
    CHECK_THROWS_AS(io::read_array(path), io::TruncationError);
  }
  std::remove(path.c_str());
}

TEST_CASE("image export: uniform image for a constant, deterministic fixed range") {
  const GridPtr g = make_grid(2.0, 4);
  ComplexField f(g);
  f.v.setConstant(0.5);
  const std::string path = temp_path("vhed_img_test.pgm");
  io::export_image(path, f.v, io::Render::Real);
  const std::string bytes = slurp(path);
  const size_t header_end = bytes.find("255\n") + 4;
  std::set<char> pix(bytes.begin() + static_cast<long>(header_end), bytes.end());
  CHECK(pix.size() == 1);

  io::export_image(path, f.v, io::Render::Real, {{0.0, 1.0}});
  const std::string once = slurp(path);
  io::export_image(path, f.v, io::Render::Real, {{0.0, 1.0}});
  CHECK(slurp(path) == once);
  std::remove(path.c_str());
  std::remove((path + ".txt").c_str());
}

TEST_CASE("a three-level phantom renders to three gray levels") {
  const GridPtr g = make_grid(2.0, 6);
  PhantomSpec spec;
  Inclusion lo, hi;
  lo.center = cdouble(-0.4, 0.0);
  lo.radius = 0.25;
  lo.offset = -0.3;
  hi.center = cdouble(0.4, 0.0);
  hi.radius = 0.25;
  hi.offset = +0.3;
  spec.inclusions = {lo, hi};
  const ComplexField sigma = build_phantom(spec, g);
  const std::string path = temp_path("vhed_levels_test.pgm");
  io::export_image(path, sigma.v, io::Render::Real, {{0.5, 1.5}});
  const std::string bytes = slurp(path);
  const size_t header_end = bytes.find("255\n") + 4;
  std::set<char> pix(bytes.begin() + static_cast<long>(header_end), bytes.end());
  CHECK(pix.size() == 3);
  std::remove(path.c_str());
  std::remove((path + ".txt").c_str());
}
