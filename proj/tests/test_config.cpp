#include "doctest.h"
#include "vhed/config.hpp"

using namespace vhed;

TEST_CASE("empty config yields the documented defaults") {
  const RunConfig c = parse_config("{}");
  CHECK(c.grid_exponent == 8);
  CHECK(c.grid_side_half == 2.0);
  CHECK(c.kgrid.cutoff == 60.0);
  CHECK(c.kgrid.n_tau == 128);
  CHECK(c.kgrid.n_phi == 32);
  CHECK(c.boundary_points == 64);
  CHECK(c.solver.tol == 1e-8);
  CHECK(!c.calibration.has_value());
  CHECK(c.workers == 1);
}

TEST_CASE("unknown keys are rejected at every level") {
  CHECK_THROWS_AS(parse_config(R"({"gird": {}})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"grid": {"sidehalf": 2.0}})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"solver": {"tolerance": 1e-8}})"), ConfigError);
  CHECK_THROWS_AS(
      parse_config(R"({"phantom": {"inclusions": [{"shape": "disc", "offset": 0.1, "r": 1}]}})"),
      ConfigError);
}

TEST_CASE("invalid values are rejected with named keys") {
  CHECK_THROWS_AS(parse_config(R"({"grid": {"exponent": 3}})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"kgrid": {"n_tau": 100}})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"kgrid": {"window": "gauss"}})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"workers": 0})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"reconstruction": {"route": "art"}})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"outputs": {"formats": ["hdf5"]}})"), ConfigError);
  CHECK_THROWS_AS(parse_config("not json"), ConfigError);
}

TEST_CASE("named phantom and inline phantom specs parse") {
  const RunConfig named = parse_config(R"({"phantom": {"name": "radial-2jump"}})");
  CHECK(named.phantom.inclusions.size() == 2);
  CHECK(named.phantom.background.has_value());
  CHECK(named.phantom_name == "radial-2jump");

  const RunConfig inline_spec = parse_config(R"({
    "phantom": {
      "background": {"type": "constant"},
      "inclusions": [
        {"shape": "ellipse", "center": [0.1, 0.0], "semi_axes": [0.5, 0.3],
         "rotation": 0.4, "offset": 0.4},
        {"shape": "annulus", "inner_radius": 0.7, "outer_radius": 0.8, "offset": -0.5}
      ]
    }
  })");
  CHECK(!inline_spec.phantom.background.has_value());
  REQUIRE(inline_spec.phantom.inclusions.size() == 2);
  CHECK(inline_spec.phantom.inclusions[0].shape == Inclusion::Shape::Ellipse);
  CHECK(inline_spec.phantom.inclusions[1].shape == Inclusion::Shape::Annulus);

  CHECK_THROWS_AS(
      parse_config(R"({"phantom": {"name": "radial-1jump", "inclusions": []}})"), ConfigError);
}

TEST_CASE("calibration accepts a frozen constant or the calibrate keyword") {
  const RunConfig frozen =
      parse_config(R"({"averaging": {"weight": 0.5, "calibration": [0.0, 6.28]}})");
  REQUIRE(frozen.calibration.has_value());
  CHECK(frozen.calibration->imag() == doctest::Approx(6.28));
  const RunConfig fresh = parse_config(R"({"averaging": {"calibration": "calibrate"}})");
  CHECK(!fresh.calibration.has_value());
  CHECK_THROWS_AS(parse_config(R"({"averaging": {"calibration": "auto"}})"), ConfigError);
}

TEST_CASE("config snapshot round trips through the parser") {
  RunConfig c = parse_config(R"({
    "grid": {"side_half": 2.0, "exponent": 7},
    "phantom": {"name": "circle-rho", "rho": 0.25},
    "kgrid": {"R": 30.0, "n_tau": 64, "n_phi": 16, "window": "hann"},
    "boundary": {"n_points": 32},
    "solver": {"tol": 1e-9, "max_iter": 500, "restart": 20, "warm_start": false},
    "averaging": {"weight": [0.0, 1.0], "calibration": [1.0, 2.0]},
    "reconstruction": {"route": "lambda"},
    "outputs": {"directory": "runs/x", "formats": ["vhed"], "render": "abs", "range": [0, 2]},
    "workers": 3
  })");
  const RunConfig back = parse_config(config_to_json(c));
  CHECK(back.grid_exponent == 7);
  CHECK(back.kgrid.n_tau == 64);
  CHECK(back.kgrid.window == Window::Hann);
  CHECK(back.boundary_points == 32);
  CHECK(back.solver.tol == 1e-9);
  CHECK(back.warm_start == false);
  CHECK(back.averaging_weight == cdouble(0.0, 1.0));
  REQUIRE(back.calibration.has_value());
  CHECK(*back.calibration == cdouble(1.0, 2.0));
  CHECK(back.route == ReconstructionRoute::Lambda);
  CHECK(back.out_dir == "runs/x");
  CHECK(back.fixed_range.has_value());
  CHECK(back.workers == 3);
  CHECK(back.phantom_name == "circle-rho");
}
