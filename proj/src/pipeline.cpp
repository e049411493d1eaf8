#include "vhed/pipeline.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>

namespace vhed {

namespace fs = std::filesystem;

PipelineContext make_context(const RunConfig& config) {
  PipelineContext ctx;
  ctx.config = config;
  ctx.grid = make_grid(config.grid_side_half, config.grid_exponent);
  ctx.sigma = build_phantom(config.phantom, ctx.grid);
  ctx.mu = sigma_to_mu(ctx.sigma);
  ctx.boundary = unit_circle_points(config.boundary_points);
  return ctx;
}

namespace {

void ensure_out_dir(const RunConfig& c) { fs::create_directories(c.out_dir); }

void write_snapshot(const RunConfig& c) {
  ensure_out_dir(c);
  std::ofstream out(fs::path(c.out_dir) / "config.json", std::ios::trunc);
  out << config_to_json(c);
}

bool wants(const RunConfig& c, const std::string& fmt) {
  for (const auto& f : c.formats)
    if (f == fmt) return true;
  return false;
}

std::string path_in(const RunConfig& c, const std::string& name) {
  return (fs::path(c.out_dir) / name).string();
}

void save_field(const RunConfig& c, const ComplexField& f, const std::string& stem) {
  if (wants(c, "vhed")) io::write_array(path_in(c, stem + ".vhed"), io::from_field(f));
  if (wants(c, "pgm"))
    io::export_image(path_in(c, stem + ".pgm"), f.v, io::render_from_name(c.render),
                     c.fixed_range);
  if (wants(c, "csv")) {
    std::vector<std::vector<double>> rows;
    const int n = f.n();
    rows.reserve(static_cast<size_t>(n) * n);
    for (int iy = 0; iy < n; ++iy)
      for (int ix = 0; ix < n; ++ix)
        rows.push_back({f.grid->coord(ix), f.grid->coord(iy), f.v(iy, ix).real(),
                        f.v(iy, ix).imag()});
    io::write_csv(path_in(c, stem + ".csv"), {"x", "y", "re", "im"}, rows);
  }
}

void save_sinogram(const RunConfig& c, const Sinogram& s, const std::string& stem) {
  if (wants(c, "vhed")) io::write_array(path_in(c, stem + ".vhed"), io::from_sinogram(s));
  if (wants(c, "pgm"))
    io::export_image(path_in(c, stem + ".pgm"), s.vals, io::render_from_name(c.render),
                     c.fixed_range);
  if (wants(c, "csv")) {
    std::vector<std::vector<double>> rows;
    for (int m = 0; m < s.n_t(); ++m)
      for (int a = 0; a < s.n_phi(); ++a)
        rows.push_back({s.t(m), kPi * a / s.n_phi(), s.vals(m, a).real(), s.vals(m, a).imag()});
    io::write_csv(path_in(c, stem + ".csv"), {"t", "phi", "re", "im"}, rows);
  }
}

}  // namespace

std::vector<SpectralCube> run_sweep(const PipelineContext& ctx) {
  SweepOptions opts;
  opts.solver = ctx.config.solver;
  opts.warm_start = ctx.config.warm_start;
  opts.workers = ctx.config.workers;
  opts.verbose = ctx.config.verbose;
  return sweep(ctx.mu, ctx.config.kgrid, ctx.boundary, {+1, -1}, opts);
}

SinogramSet sinograms_from_cubes(const PipelineContext& ctx, const SpectralCube& plus_tau,
                                 const SpectralCube& minus_tau) {
  const KGrid& kg = ctx.config.kgrid;
  SinogramSet set;
  set.plus = boundary_average(partial_ft(plus_tau, kg), kg, ctx.config.averaging_weight);
  set.plus.provenance = "full";
  set.minus = boundary_average(partial_ft(minus_tau, kg), kg, ctx.config.averaging_weight);
  set.minus.provenance = "full";
  auto oe = parity_combine(set.plus, set.minus);
  set.odd = std::move(oe.first);
  set.even = std::move(oe.second);
  return set;
}

Sinogram term1_sinogram(const PipelineContext& ctx, const ComplexField& mu) {
  SweepOptions opts;
  opts.neumann_order = 1;
  opts.workers = ctx.config.workers;
  const auto cubes = sweep(mu, ctx.config.kgrid, ctx.boundary, {+1}, opts);
  Sinogram s = boundary_average(partial_ft(cubes[0], ctx.config.kgrid), ctx.config.kgrid,
                                ctx.config.averaging_weight);
  s.provenance = "term-1";
  return s;
}

Calibration resolve_calibration(const PipelineContext& ctx) {
  if (ctx.config.calibration) {
    Calibration cal;
    cal.constant = *ctx.config.calibration;
    cal.fit_residual = 0.0;
    return cal;
  }
  // reference phantom: smooth low-contrast bump, fixed for calibration runs
  PhantomSpec ref;
  ref.background = BackgroundBump{cdouble(0.0, 0.0), 0.5, 0.2};
  const ComplexField sigma_ref = build_phantom(ref, ctx.grid);
  const ComplexField mu_ref = sigma_to_mu(sigma_ref);
  const Sinogram pipe = term1_sinogram(ctx, mu_ref);
  const Sinogram oracle =
      apply_window_in_t(forward_T1a(mu_ref, ctx.config.kgrid), ctx.config.kgrid);
  return calibrate_constant(pipe, oracle);
}

std::vector<InterfaceCurve> phantom_curves(const PhantomSpec& spec) {
  std::vector<InterfaceCurve> curves;
  for (const auto& inc : spec.inclusions) {
    switch (inc.shape) {
      case Inclusion::Shape::Disc:
        curves.push_back(InterfaceCurve::circle(inc.center, inc.radius));
        break;
      case Inclusion::Shape::Ellipse:
        curves.push_back(
            InterfaceCurve::ellipse(inc.center, inc.semi_major, inc.semi_minor, inc.rotation));
        break;
      case Inclusion::Shape::Annulus:
        curves.push_back(InterfaceCurve::circle(inc.center, inc.inner_radius));
        curves.push_back(InterfaceCurve::circle(inc.center, inc.outer_radius));
        break;
      case Inclusion::Shape::HalfDisc: {
        // circle for the arc (over-predicts the missing half, which is fine
        // for containment overlays) plus the flat chord
        curves.push_back(InterfaceCurve::circle(inc.center, inc.radius));
        const cdouble rot = std::polar(1.0, inc.rotation);
        curves.push_back(InterfaceCurve::polyline(
            {inc.center - rot * inc.radius, inc.center + rot * inc.radius}));
        break;
      }
    }
  }
  return curves;
}

void cmd_phantom(const RunConfig& config) {
  PipelineContext ctx = make_context(config);
  write_snapshot(config);
  save_field(config, ctx.sigma, "sigma");
  save_field(config, ctx.mu, "mu");
  std::cout << "phantom: n = " << ctx.grid->n() << ", max|mu| = " << max_abs(ctx.mu) << "\n";
}

void cmd_sweep(const RunConfig& config) {
  PipelineContext ctx = make_context(config);
  write_snapshot(config);
  const auto cubes = run_sweep(ctx);
  io::write_array(path_in(config, "cube_plus.vhed"), io::from_cube(cubes[0], config.kgrid));
  io::write_array(path_in(config, "cube_minus.vhed"), io::from_cube(cubes[1], config.kgrid));
  std::cout << "sweep: wrote cube_plus.vhed, cube_minus.vhed ("
            << cubes[0].data.size() << " samples each)\n";
}

namespace {

// Load the sweep cubes when present and compatible; recompute otherwise.
std::vector<SpectralCube> cubes_for(const PipelineContext& ctx) {
  const auto& c = ctx.config;
  const std::string pp = path_in(c, "cube_plus.vhed");
  const std::string pm = path_in(c, "cube_minus.vhed");
  if (fs::exists(pp) && fs::exists(pm)) {
    try {
      SpectralCube plus = io::to_cube(io::read_array(pp));
      SpectralCube minus = io::to_cube(io::read_array(pm));
      if (plus.n_rad == c.kgrid.n_tau && plus.n_phi == c.kgrid.n_phi &&
          static_cast<int>(plus.boundary_points.size()) == c.boundary_points &&
          plus.domain == CubeDomain::Tau && plus.sign == +1 && minus.sign == -1 &&
          minus.n_rad == c.kgrid.n_tau && minus.n_phi == c.kgrid.n_phi)
        return {std::move(plus), std::move(minus)};
      std::cerr << "cubes on disk do not match the config; recomputing\n";
    } catch (const io::IoError& e) {
      std::cerr << "could not reuse cubes (" << e.what() << "); recomputing\n";
    }
  }
  auto cubes = run_sweep(ctx);
  io::write_array(pp, io::from_cube(cubes[0], c.kgrid));
  io::write_array(pm, io::from_cube(cubes[1], c.kgrid));
  return cubes;
}

}  // namespace

void cmd_sinogram(const RunConfig& config) {
  PipelineContext ctx = make_context(config);
  write_snapshot(config);
  const auto cubes = cubes_for(ctx);
  const SinogramSet set = sinograms_from_cubes(ctx, cubes[0], cubes[1]);
  save_sinogram(config, set.plus, "sino_plus");
  save_sinogram(config, set.minus, "sino_minus");
  save_sinogram(config, set.odd, "sino_odd");
  save_sinogram(config, set.even, "sino_even");
  std::cout << "sinogram: wrote sino_{plus,minus,odd,even}\n";
}

void cmd_reconstruct(const RunConfig& config) {
  PipelineContext ctx = make_context(config);
  const auto cubes = cubes_for(ctx);
  const SinogramSet set = sinograms_from_cubes(ctx, cubes[0], cubes[1]);
  const Calibration cal = resolve_calibration(ctx);
  ctx.config.calibration = cal.constant;  // freeze into the snapshot
  write_snapshot(ctx.config);
  if (!config.calibration)
    std::cout << "calibration: c = (" << cal.constant.real() << ", " << cal.constant.imag()
              << "), fit residual " << cal.fit_residual << "\n";

  Sinogram data = set.odd;
  data.vals *= cal.constant;

  MuToSigmaReport rep;
  if (config.route != ReconstructionRoute::Lambda) {
    const ComplexField mu_fbp = fbp_invert(data, ctx.grid);
    const ComplexField sigma_fbp = mu_to_sigma(mu_fbp, &rep);
    save_field(config, mu_fbp, "mu_fbp");
    save_field(config, sigma_fbp, "sigma_fbp");
    if (rep.max_imag_discarded > 1e-3)
      std::cerr << "warning: discarded imaginary part up to " << rep.max_imag_discarded
                << " in mu_to_sigma\n";
  }
  if (config.route != ReconstructionRoute::Fbp) {
    const ComplexField edge = lambda_invert(data, ctx.grid);
    save_field(config, edge, "edge_lambda");
  }
  std::cout << "reconstruct: done\n";
}

void cmd_neumann(const RunConfig& config, int order) {
  if (order < 1) throw ConfigError("neumann: order must be >= 1");
  PipelineContext ctx = make_context(config);
  write_snapshot(config);
  SweepOptions opts;
  opts.neumann_order = order;
  opts.workers = config.workers;
  opts.verbose = config.verbose;
  const auto cubes = sweep(ctx.mu, config.kgrid, ctx.boundary, {+1, -1}, opts);
  // cubes: [plus term1..termN, minus term1..termN]
  for (int n = 1; n <= order; ++n) {
    Sinogram p = boundary_average(partial_ft(cubes[static_cast<size_t>(n - 1)], config.kgrid),
                                  config.kgrid, config.averaging_weight);
    p.provenance = "term-" + std::to_string(n);
    Sinogram m = boundary_average(
        partial_ft(cubes[static_cast<size_t>(order + n - 1)], config.kgrid), config.kgrid,
        config.averaging_weight);
    m.provenance = "term-" + std::to_string(n);
    save_sinogram(config, p, "sino_term" + std::to_string(n) + "_plus");
    save_sinogram(config, m, "sino_term" + std::to_string(n) + "_minus");
    const auto oe = parity_combine(p, m);
    save_sinogram(config, oe.first, "sino_term" + std::to_string(n) + "_odd");
    save_sinogram(config, oe.second, "sino_term" + std::to_string(n) + "_even");
  }
  std::cout << "neumann: wrote per-term sinograms for n <= " << order << "\n";
}

void cmd_predict(const RunConfig& config, const std::vector<int>& orders) {
  PipelineContext ctx = make_context(config);
  write_snapshot(config);
  const auto curves = phantom_curves(config.phantom);
  if (curves.empty()) throw ConfigError("predict: phantom has no sharp interfaces");
  std::vector<double> phis(static_cast<size_t>(config.kgrid.n_phi));
  for (int a = 0; a < config.kgrid.n_phi; ++a) phis[static_cast<size_t>(a)] = config.kgrid.phi(a);
  const double dedup = config.kgrid.dt() / 4.0;

  std::vector<std::vector<double>> rows;
  for (int m : orders) {
    for (size_t ci = 0; ci < curves.size(); ++ci) {
      const SingularityLadder lad = predict_sc(curves[ci], m, phis, dedup);
      for (const auto& row : ladder_rows(lad))
        rows.push_back({static_cast<double>(ci), row[0], row[1], row[2]});
    }
  }
  io::write_csv(path_in(config, "ladders.csv"), {"curve", "order", "phi", "t"}, rows);

  // overlay on the odd sinogram when one is already on disk
  const std::string sino_path = path_in(config, "sino_odd.vhed");
  if (fs::exists(sino_path)) {
    const Sinogram s = io::to_sinogram(io::read_array(sino_path));
    Eigen::ArrayXXcd overlay = s.vals;
    const double peak = s.vals.abs().maxCoeff();
    for (const auto& row : rows) {
      const int a = static_cast<int>(std::lround(row[2] / kPi * s.n_phi()));
      const int m = static_cast<int>(std::lround((row[3] - s.t0) / s.dt));
      if (a >= 0 && a < s.n_phi() && m >= 0 && m < s.n_t()) overlay(m, a) = peak;
    }
    io::export_image(path_in(config, "ladders_overlay.pgm"), overlay, io::Render::Abs);
  }
  std::cout << "predict: wrote ladders.csv (" << rows.size() << " points)\n";
}

}  // namespace vhed
