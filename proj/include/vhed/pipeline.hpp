#pragma once

#include <string>
#include <vector>

#include "vhed/config.hpp"
#include "vhed/io.hpp"
#include "vhed/singpred.hpp"
#include "vhed/tomo.hpp"

namespace vhed {

// Shared state for one pipeline run: grid, sampled phantom, boundary points.
struct PipelineContext {
  RunConfig config;
  GridPtr grid;
  ComplexField sigma;
  ComplexField mu;
  std::vector<cdouble> boundary;
};

PipelineContext make_context(const RunConfig& config);

struct SinogramSet {
  Sinogram plus, minus, odd, even;
};

// Full-series tau-domain cubes for both signs (order: +, -).
std::vector<SpectralCube> run_sweep(const PipelineContext& ctx);

// Partial FT + boundary average + parity combination.
SinogramSet sinograms_from_cubes(const PipelineContext& ctx, const SpectralCube& plus_tau,
                                 const SpectralCube& minus_tau);

// Neumann-term-1 sinogram of mu through the spectral route (no solves).
Sinogram term1_sinogram(const PipelineContext& ctx, const ComplexField& mu);

// Calibration against the Radon oracle on the built-in smooth low-contrast
// reference phantom (or the frozen constant from the config, when present).
Calibration resolve_calibration(const PipelineContext& ctx);

// Interface curves of the phantom's sharp inclusions (for the predictor).
std::vector<InterfaceCurve> phantom_curves(const PhantomSpec& spec);

// Subcommand bodies; all write into config.out_dir and snapshot the config.
void cmd_phantom(const RunConfig& config);
void cmd_sweep(const RunConfig& config);
void cmd_sinogram(const RunConfig& config);
void cmd_reconstruct(const RunConfig& config);
void cmd_neumann(const RunConfig& config, int order);
void cmd_predict(const RunConfig& config, const std::vector<int>& orders);

}  // namespace vhed
