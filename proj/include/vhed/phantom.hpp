#pragma once

#include <optional>
#include <string>
#include <vector>

#include "vhed/grid.hpp"

namespace vhed {

// Conductivity phantom description: smooth radial background (constant 1,
// optionally plus a compactly supported C-infinity flat-top bump) and a list
// of sharp inclusions applied as additive conductivity offsets.
struct BackgroundBump {
  cdouble center{0.0, 0.0};
  double radius = 0.9;     // support radius of the bump
  double amplitude = 0.4;  // value added at the center
};

struct Inclusion {
  enum class Shape { Disc, Ellipse, HalfDisc, Annulus };
  Shape shape = Shape::Disc;
  cdouble center{0.0, 0.0};
  double radius = 0.0;        // disc / half-disc
  double semi_major = 0.0;    // ellipse
  double semi_minor = 0.0;    // ellipse
  double inner_radius = 0.0;  // annulus
  double outer_radius = 0.0;  // annulus
  double rotation = 0.0;      // ellipse / half-disc orientation (radians)
  double offset = 0.0;        // additive conductivity jump
};

struct PhantomSpec {
  std::optional<BackgroundBump> background;  // nullopt: constant 1
  std::vector<Inclusion> inclusions;
  double smooth_cells = 0.0;  // edge mollification width in cells (0 = sharp)
};

// Built-in phantoms named after the cases they reproduce:
// radial-smooth, radial-1jump, radial-2jump, hme, stroke-hem, stroke-clot,
// circle-rho (parametric: circle of radius rho, jump -0.3, constant background).
PhantomSpec named_phantom(const std::string& name, double rho = 0.2);

// Sample sigma on the grid. Throws if positivity or the support-inside-0.95
// invariant would be violated.
ComplexField build_phantom(const PhantomSpec& spec, const GridPtr& grid);

// mu = (1 - sigma)/(1 + sigma). Requires sigma real-valued and >= c1 > 0.
ComplexField sigma_to_mu(const ComplexField& sigma);

struct MuToSigmaReport {
  double max_imag_discarded = 0.0;
  double clamped_fraction = 0.0;
};

// sigma = (1 - mu)/(1 + mu) on Re(mu) clamped to [-0.95, 0.95]; imaginary
// part discarded (reported so callers can warn).
ComplexField mu_to_sigma(const ComplexField& mu_tilde, MuToSigmaReport* report = nullptr);

}  // namespace vhed
