#include "vhed/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "vhed/io.hpp"

namespace vhed {

namespace {

using nlohmann::json;

void require_keys(const json& j, const std::string& where,
                  const std::set<std::string>& allowed) {
  if (!j.is_object()) throw ConfigError(where + ": expected an object");
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!allowed.count(it.key()))
      throw ConfigError(where + ": unknown key \"" + it.key() + "\"");
}

double get_num(const json& j, const std::string& where) {
  if (!j.is_number()) throw ConfigError(where + ": expected a number");
  return j.get<double>();
}

int get_int(const json& j, const std::string& where) {
  if (!j.is_number_integer()) throw ConfigError(where + ": expected an integer");
  return j.get<int>();
}

cdouble get_complex(const json& j, const std::string& where) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  throw ConfigError(where + ": expected a number or [re, im]");
}

cdouble get_point(const json& j, const std::string& where) {
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  throw ConfigError(where + ": expected [x, y]");
}

PhantomSpec parse_phantom(const json& j, std::string& name_out) {
  require_keys(j, "phantom",
               {"name", "rho", "background", "inclusions", "smooth_cells"});
  if (j.contains("name")) {
    if (j.contains("background") || j.contains("inclusions"))
      throw ConfigError("phantom: give either name or an inline spec, not both");
    name_out = j["name"].get<std::string>();
    const double rho = j.contains("rho") ? get_num(j["rho"], "phantom.rho") : 0.2;
    PhantomSpec s = named_phantom(name_out, rho);
    if (j.contains("smooth_cells")) s.smooth_cells = get_num(j["smooth_cells"], "phantom.smooth_cells");
    return s;
  }
  PhantomSpec s;
  if (j.contains("smooth_cells")) s.smooth_cells = get_num(j["smooth_cells"], "phantom.smooth_cells");
  if (j.contains("background")) {
    const json& b = j["background"];
    require_keys(b, "phantom.background", {"type", "center", "radius", "amplitude"});
    const std::string type = b.value("type", "bump");
    if (type == "bump") {
      BackgroundBump bump;
      if (b.contains("center")) bump.center = get_point(b["center"], "phantom.background.center");
      if (b.contains("radius")) bump.radius = get_num(b["radius"], "phantom.background.radius");
      if (b.contains("amplitude"))
        bump.amplitude = get_num(b["amplitude"], "phantom.background.amplitude");
      s.background = bump;
    } else if (type != "constant") {
      throw ConfigError("phantom.background.type: expected \"constant\" or \"bump\"");
    }
  }
  if (j.contains("inclusions")) {
    if (!j["inclusions"].is_array()) throw ConfigError("phantom.inclusions: expected an array");
    for (const auto& ij : j["inclusions"]) {
      require_keys(ij, "phantom.inclusions[]",
                   {"shape", "center", "radius", "semi_axes", "inner_radius", "outer_radius",
                    "rotation", "offset"});
      Inclusion inc;
      const std::string shape = ij.value("shape", "disc");
      if (shape == "disc")
        inc.shape = Inclusion::Shape::Disc;
      else if (shape == "ellipse")
        inc.shape = Inclusion::Shape::Ellipse;
      else if (shape == "half_disc")
        inc.shape = Inclusion::Shape::HalfDisc;
      else if (shape == "annulus")
        inc.shape = Inclusion::Shape::Annulus;
      else
        throw ConfigError("phantom.inclusions[].shape: unknown shape \"" + shape + "\"");
      if (ij.contains("center")) inc.center = get_point(ij["center"], "inclusion center");
      if (ij.contains("radius")) inc.radius = get_num(ij["radius"], "inclusion radius");
      if (ij.contains("semi_axes")) {
        const cdouble ab = get_point(ij["semi_axes"], "inclusion semi_axes");
        inc.semi_major = ab.real();
        inc.semi_minor = ab.imag();
      }
      if (ij.contains("inner_radius"))
        inc.inner_radius = get_num(ij["inner_radius"], "inclusion inner_radius");
      if (ij.contains("outer_radius"))
        inc.outer_radius = get_num(ij["outer_radius"], "inclusion outer_radius");
      if (ij.contains("rotation")) inc.rotation = get_num(ij["rotation"], "inclusion rotation");
      if (!ij.contains("offset")) throw ConfigError("phantom.inclusions[]: offset is required");
      inc.offset = get_num(ij["offset"], "inclusion offset");
      s.inclusions.push_back(inc);
    }
  }
  return s;
}

}  // namespace

RunConfig parse_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config: invalid JSON: ") + e.what());
  }
  require_keys(j, "config",
               {"grid", "phantom", "kgrid", "boundary", "solver", "averaging",
                "reconstruction", "outputs", "workers"});
  RunConfig c;
  if (j.contains("grid")) {
    const json& g = j["grid"];
    require_keys(g, "grid", {"side_half", "exponent"});
    if (g.contains("side_half")) c.grid_side_half = get_num(g["side_half"], "grid.side_half");
    if (g.contains("exponent")) c.grid_exponent = get_int(g["exponent"], "grid.exponent");
    if (c.grid_exponent < 4 || c.grid_exponent > 16)
      throw ConfigError("grid.exponent: must be in [4, 16]");
    if (!(c.grid_side_half > 0.0)) throw ConfigError("grid.side_half: must be positive");
  }
  if (j.contains("phantom")) c.phantom = parse_phantom(j["phantom"], c.phantom_name);
  if (j.contains("kgrid")) {
    const json& k = j["kgrid"];
    require_keys(k, "kgrid", {"R", "n_tau", "n_phi", "window"});
    if (k.contains("R")) c.kgrid.cutoff = get_num(k["R"], "kgrid.R");
    if (k.contains("n_tau")) c.kgrid.n_tau = get_int(k["n_tau"], "kgrid.n_tau");
    if (k.contains("n_phi")) c.kgrid.n_phi = get_int(k["n_phi"], "kgrid.n_phi");
    try {
      if (k.contains("window")) c.kgrid.window = window_from_name(k["window"].get<std::string>());
      c.kgrid.validate();
    } catch (const ContractError& e) {
      throw ConfigError(e.what());
    }
  }
  if (j.contains("boundary")) {
    require_keys(j["boundary"], "boundary", {"n_points"});
    if (j["boundary"].contains("n_points"))
      c.boundary_points = get_int(j["boundary"]["n_points"], "boundary.n_points");
    if (c.boundary_points < 4) throw ConfigError("boundary.n_points: must be >= 4");
  }
  if (j.contains("solver")) {
    const json& s = j["solver"];
    require_keys(s, "solver", {"tol", "max_iter", "restart", "warm_start", "method", "damping"});
    if (s.contains("tol")) c.solver.tol = get_num(s["tol"], "solver.tol");
    if (s.contains("max_iter")) c.solver.max_iter = get_int(s["max_iter"], "solver.max_iter");
    if (s.contains("restart")) c.solver.restart = get_int(s["restart"], "solver.restart");
    if (s.contains("warm_start")) {
      if (!s["warm_start"].is_boolean()) throw ConfigError("solver.warm_start: expected bool");
      c.warm_start = s["warm_start"].get<bool>();
    }
    if (s.contains("method")) {
      const std::string m = s["method"].get<std::string>();
      if (m == "gmres")
        c.solver.use_fixed_point = false;
      else if (m == "fixed_point")
        c.solver.use_fixed_point = true;
      else
        throw ConfigError("solver.method: expected \"gmres\" or \"fixed_point\"");
    }
    if (s.contains("damping")) c.solver.damping = get_num(s["damping"], "solver.damping");
    if (!(c.solver.tol > 0.0) || c.solver.max_iter < 1 || c.solver.restart < 1)
      throw ConfigError("solver: tol must be positive, max_iter/restart >= 1");
  }
  if (j.contains("averaging")) {
    const json& a = j["averaging"];
    require_keys(a, "averaging", {"weight", "calibration"});
    if (a.contains("weight")) c.averaging_weight = get_complex(a["weight"], "averaging.weight");
    if (a.contains("calibration")) {
      if (a["calibration"].is_string()) {
        if (a["calibration"].get<std::string>() != "calibrate")
          throw ConfigError("averaging.calibration: expected \"calibrate\" or [re, im]");
        c.calibration.reset();
      } else {
        c.calibration = get_complex(a["calibration"], "averaging.calibration");
      }
    }
  }
  if (j.contains("reconstruction")) {
    require_keys(j["reconstruction"], "reconstruction", {"route"});
    if (j["reconstruction"].contains("route")) {
      const std::string r = j["reconstruction"]["route"].get<std::string>();
      if (r == "fbp")
        c.route = ReconstructionRoute::Fbp;
      else if (r == "lambda")
        c.route = ReconstructionRoute::Lambda;
      else if (r == "both")
        c.route = ReconstructionRoute::Both;
      else
        throw ConfigError("reconstruction.route: expected fbp, lambda or both");
    }
  }
  if (j.contains("outputs")) {
    const json& o = j["outputs"];
    require_keys(o, "outputs", {"directory", "formats", "render", "range"});
    if (o.contains("directory")) c.out_dir = o["directory"].get<std::string>();
    if (o.contains("formats")) {
      c.formats.clear();
      for (const auto& f : o["formats"]) {
        const std::string fmt = f.get<std::string>();
        if (fmt != "vhed" && fmt != "csv" && fmt != "pgm")
          throw ConfigError("outputs.formats: unknown format \"" + fmt + "\"");
        c.formats.push_back(fmt);
      }
    }
    if (o.contains("render")) {
      c.render = o["render"].get<std::string>();
      io::render_from_name(c.render);  // validate
    }
    if (o.contains("range")) {
      if (o["range"].is_string()) {
        if (o["range"].get<std::string>() != "auto")
          throw ConfigError("outputs.range: expected \"auto\" or [lo, hi]");
      } else {
        const cdouble r = get_point(o["range"], "outputs.range");
        c.fixed_range = {r.real(), r.imag()};
      }
    }
  }
  if (j.contains("workers")) {
    c.workers = get_int(j["workers"], "workers");
    if (c.workers < 1) throw ConfigError("workers: must be >= 1");
  }
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string config_to_json(const RunConfig& c) {
  json j;
  j["grid"] = {{"side_half", c.grid_side_half}, {"exponent", c.grid_exponent}};
  json ph;
  if (!c.phantom_name.empty()) {
    ph["name"] = c.phantom_name;
  } else {
    if (c.phantom.background) {
      ph["background"] = {{"type", "bump"},
                          {"center", {c.phantom.background->center.real(),
                                      c.phantom.background->center.imag()}},
                          {"radius", c.phantom.background->radius},
                          {"amplitude", c.phantom.background->amplitude}};
    } else {
      ph["background"] = {{"type", "constant"}};
    }
    ph["inclusions"] = json::array();
    for (const auto& inc : c.phantom.inclusions) {
      json ij;
      switch (inc.shape) {
        case Inclusion::Shape::Disc:
          ij["shape"] = "disc";
          ij["radius"] = inc.radius;
          break;
        case Inclusion::Shape::Ellipse:
          ij["shape"] = "ellipse";
          ij["semi_axes"] = {inc.semi_major, inc.semi_minor};
          ij["rotation"] = inc.rotation;
          break;
        case Inclusion::Shape::HalfDisc:
          ij["shape"] = "half_disc";
          ij["radius"] = inc.radius;
          ij["rotation"] = inc.rotation;
          break;
        case Inclusion::Shape::Annulus:
          ij["shape"] = "annulus";
          ij["inner_radius"] = inc.inner_radius;
          ij["outer_radius"] = inc.outer_radius;
          break;
      }
      ij["center"] = {inc.center.real(), inc.center.imag()};
      ij["offset"] = inc.offset;
      ph["inclusions"].push_back(ij);
    }
  }
  if (c.phantom.smooth_cells > 0.0) ph["smooth_cells"] = c.phantom.smooth_cells;
  j["phantom"] = ph;
  j["kgrid"] = {{"R", c.kgrid.cutoff},
                {"n_tau", c.kgrid.n_tau},
                {"n_phi", c.kgrid.n_phi},
                {"window", window_name(c.kgrid.window)}};
  j["boundary"] = {{"n_points", c.boundary_points}};
  j["solver"] = {{"tol", c.solver.tol},
                 {"max_iter", c.solver.max_iter},
                 {"restart", c.solver.restart},
                 {"warm_start", c.warm_start},
                 {"method", c.solver.use_fixed_point ? "fixed_point" : "gmres"}};
  if (c.calibration)
    j["averaging"] = {{"weight", {c.averaging_weight.real(), c.averaging_weight.imag()}},
                      {"calibration", {c.calibration->real(), c.calibration->imag()}}};
  else
    j["averaging"] = {{"weight", {c.averaging_weight.real(), c.averaging_weight.imag()}},
                      {"calibration", "calibrate"}};
  j["reconstruction"] = {
      {"route", c.route == ReconstructionRoute::Fbp
                    ? "fbp"
                    : (c.route == ReconstructionRoute::Lambda ? "lambda" : "both")}};
  json out = {{"directory", c.out_dir}, {"formats", c.formats}, {"render", c.render}};
  if (c.fixed_range)
    out["range"] = {c.fixed_range->first, c.fixed_range->second};
  else
    out["range"] = "auto";
  j["outputs"] = out;
  j["workers"] = c.workers;
  return j.dump(2) + "\n";
}

}  // namespace vhed
