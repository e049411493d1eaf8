// vhed: virtual hybrid edge detection laboratory.
// Pipeline: phantom -> CGO sweep -> partial Fourier transform -> boundary
// averaged sinograms -> parity combination -> FBP / Lambda reconstruction,
// with a Radon oracle and a singularity-location predictor for validation.

#include <iostream>

#include "CLI11.hpp"
#include "vhed/acceptance.hpp"
#include "vhed/pipeline.hpp"

namespace {

struct CommonArgs {
  std::string config_path;
  std::string out_dir;
  int workers = 0;
  bool verbose = false;
};

vhed::RunConfig resolve(const CommonArgs& args) {
  vhed::RunConfig c = vhed::load_config(args.config_path);
  if (!args.out_dir.empty()) c.out_dir = args.out_dir;
  if (args.workers > 0) c.workers = args.workers;
  if (args.verbose) c.verbose = true;
  return c;
}

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--config", args.config_path, "run configuration (JSON)")->required();
  cmd->add_option("--out", args.out_dir, "output directory override");
  cmd->add_option("--workers", args.workers, "worker threads override");
  cmd->add_flag("--verbose", args.verbose, "chatty progress and solver logs");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"vhed: CGO spectral sweeps, sinograms and edge reconstruction"};
  app.require_subcommand(1);

  CommonArgs args;
  int neumann_order = 3;
  std::vector<int> predict_orders{1, 2, 3};
  std::vector<int> verify_ids;

  auto* p_phantom = app.add_subcommand("phantom", "sample the conductivity phantom");
  add_common(p_phantom, args);
  auto* p_sweep = app.add_subcommand("sweep", "CGO solves over the k grid (both signs)");
  add_common(p_sweep, args);
  auto* p_sino = app.add_subcommand("sinogram", "partial FT, averaging, parity combination");
  add_common(p_sino, args);
  auto* p_rec = app.add_subcommand("reconstruct", "FBP and Lambda reconstructions");
  add_common(p_rec, args);
  auto* p_neu = app.add_subcommand("neumann", "per-term scattering sinograms");
  add_common(p_neu, args);
  p_neu->add_option("--order", neumann_order, "highest scattering term (default 3)");
  auto* p_pred = app.add_subcommand("predict", "singularity ladders from the interfaces");
  add_common(p_pred, args);
  p_pred->add_option("--orders", predict_orders, "scattering orders (default 1 2 3)");
  auto* p_ver = app.add_subcommand("verify", "run the acceptance criteria");
  add_common(p_ver, args);
  p_ver->add_option("--criteria", verify_ids, "criterion ids (default: all)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (p_ver->parsed()) {
      const vhed::RunConfig c = resolve(args);
      const auto results = vhed::acceptance::run(verify_ids, c.workers, c.verbose);
      return vhed::acceptance::report(results);
    }
    if (p_phantom->parsed()) vhed::cmd_phantom(resolve(args));
    if (p_sweep->parsed()) vhed::cmd_sweep(resolve(args));
    if (p_sino->parsed()) vhed::cmd_sinogram(resolve(args));
    if (p_rec->parsed()) vhed::cmd_reconstruct(resolve(args));
    if (p_neu->parsed()) vhed::cmd_neumann(resolve(args), neumann_order);
    if (p_pred->parsed()) vhed::cmd_predict(resolve(args), predict_orders);
  } catch (const vhed::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
