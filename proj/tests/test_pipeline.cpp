#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "vhed/pipeline.hpp"

using namespace vhed;
namespace fs = std::filesystem;

namespace {

std::string small_config_json(const std::string& out_dir, const std::string& phantom_name) {
  std::string phantom = phantom_name.empty()
                            ? std::string(R"({"background": {"type": "constant"}})")
                            : "{\"name\": \"" + phantom_name + "\"}";
  return R"({
    "grid": {"side_half": 2.0, "exponent": 6},
    "phantom": )" + phantom + R"(,
    "kgrid": {"R": 10.0, "n_tau": 16, "n_phi": 4, "window": "blackman"},
    "boundary": {"n_points": 16},
    "solver": {"tol": 1e-9, "max_iter": 500},
    "averaging": {"weight": 0.7071067811865476, "calibration": "calibrate"},
    "outputs": {"directory": ")" + out_dir + R"("},
    "workers": 1
  })";
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / name) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string str() const { return path.string(); }
};

}  // namespace

TEST_CASE("end-to-end on a unit conductivity: reconstruction returns sigma = 1") {
  TempDir dir("vhed_e2e_unit");
  const RunConfig c = parse_config(small_config_json(dir.str(), ""));

  cmd_sweep(c);
  CHECK(fs::exists(dir.path / "cube_plus.vhed"));
  CHECK(fs::exists(dir.path / "config.json"));

  cmd_reconstruct(c);  // reuses the cubes on disk
  const GridPtr grid = make_grid(c.grid_side_half, c.grid_exponent);
  const ComplexField sigma =
      io::to_field(io::read_array((dir.path / "sigma_fbp.vhed").string()), grid);
  CHECK((sigma.v - 1.0).abs().maxCoeff() < 1e-6);
}

TEST_CASE("sweep artifacts are bit-identical across reruns and worker counts") {
  TempDir dir("vhed_e2e_det");
  RunConfig c = parse_config(small_config_json(dir.str(), "circle-rho"));

  cmd_sweep(c);
  const std::string first = slurp((dir.path / "cube_plus.vhed").string());
  c.workers = 3;
  cmd_sweep(c);
  CHECK(slurp((dir.path / "cube_plus.vhed").string()) == first);
}

TEST_CASE("sinogram, neumann and predict commands write their artifacts") {
  TempDir dir("vhed_e2e_files");
  const RunConfig c = parse_config(small_config_json(dir.str(), "circle-rho"));

  cmd_phantom(c);
  CHECK(fs::exists(dir.path / "sigma.vhed"));
  CHECK(fs::exists(dir.path / "sigma.pgm"));
  CHECK(fs::exists(dir.path / "mu.csv"));

  cmd_sinogram(c);
  for (const char* stem : {"sino_plus", "sino_minus", "sino_odd", "sino_even"})
    CHECK(fs::exists(dir.path / (std::string(stem) + ".vhed")));

  // term-1 even part vanishes; files exist for every term and parity
  cmd_neumann(c, 2);
  CHECK(fs::exists(dir.path / "sino_term1_plus.vhed"));
  CHECK(fs::exists(dir.path / "sino_term2_even.vhed"));
  const Sinogram even1 =
      io::to_sinogram(io::read_array((dir.path / "sino_term1_even.vhed").string()));
  const Sinogram odd1 =
      io::to_sinogram(io::read_array((dir.path / "sino_term1_odd.vhed").string()));
  CHECK(std::sqrt(even1.vals.abs2().sum()) <= 1e-10 * std::sqrt(odd1.vals.abs2().sum()));

  cmd_predict(c, {1, 2, 3});
  CHECK(fs::exists(dir.path / "ladders.csv"));
  CHECK(fs::exists(dir.path / "ladders_overlay.pgm"));
  const std::string csv = slurp((dir.path / "ladders.csv").string());
  CHECK(csv.rfind("curve,order,phi,t", 0) == 0);
}

TEST_CASE("reconstruct freezes the computed calibration into the snapshot") {
  TempDir dir("vhed_e2e_calib");
  const RunConfig c = parse_config(small_config_json(dir.str(), "circle-rho"));
  cmd_reconstruct(c);
  const RunConfig snap = load_config((dir.path / "config.json").string());
  REQUIRE(snap.calibration.has_value());
  CHECK(std::abs(*snap.calibration) > 0.0);
}

TEST_CASE("CLI exit codes: 0 success, 1 config error, 2 compute failure") {
  if (!fs::exists("vhed")) return;  // only meaningful when run from the build tree
  TempDir dir("vhed_e2e_cli");
  const std::string cfg = (dir.path / "c.json").string();
  std::ofstream(cfg) << small_config_json(dir.str(), "circle-rho");
  auto run = [](const std::string& cmd) {
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
  };
  CHECK(run("./vhed phantom --config " + cfg + " > /dev/null 2>&1") == 0);
  std::ofstream(cfg) << R"({"grid": {"exponent": 99}})";
  CHECK(run("./vhed phantom --config " + cfg + " > /dev/null 2>&1") == 1);
  std::ofstream(cfg) << R"({"phantom": {"name": "circle-rho", "rho": 2.5}})";
  CHECK(run("./vhed phantom --config " + cfg + " > /dev/null 2>&1") == 2);
}

TEST_CASE("phantom curves cover every sharp interface") {
  const auto curves = phantom_curves(named_phantom("radial-2jump"));
  CHECK(curves.size() == 2);
  const auto stroke = phantom_curves(named_phantom("stroke-hem"));
  CHECK(stroke.size() == 3);  // annulus contributes two circles
  const auto hme = phantom_curves(named_phantom("hme"));
  CHECK(hme.size() == 3);  // ellipse + half-disc arc circle + chord
  CHECK(hme[1].kind == InterfaceCurve::Kind::Circle);
  CHECK(hme[2].kind == InterfaceCurve::Kind::Polyline);
}
