#include "vhed/phantom.hpp"

#include <cmath>

namespace vhed {

namespace {

constexpr double kSupportLimit = 0.95;

// C-infinity flat-top bump: value `amp` at the center, support |r| < radius.
double bump_value(const BackgroundBump& b, cdouble z) {
  const double r = std::abs(z - b.center) / b.radius;
  if (r >= 1.0) return 0.0;
  const double r4 = r * r * r * r;
  return b.amplitude * std::exp(1.0 + 1.0 / (r4 - 1.0));
}

// Signed distance to the inclusion boundary, negative inside. The ellipse
// distance is approximate (scaled level-set), good enough for mollification.
double signed_distance(const Inclusion& inc, cdouble z) {
  const cdouble w = (z - inc.center) * std::polar(1.0, -inc.rotation);
  switch (inc.shape) {
    case Inclusion::Shape::Disc:
      return std::abs(w) - inc.radius;
    case Inclusion::Shape::HalfDisc:
      return std::max(std::abs(w) - inc.radius, -w.imag());
    case Inclusion::Shape::Ellipse: {
      const double q = std::hypot(w.real() / inc.semi_major, w.imag() / inc.semi_minor);
      return (q - 1.0) * std::min(inc.semi_major, inc.semi_minor);
    }
    case Inclusion::Shape::Annulus: {
      const double r = std::abs(w);
      return std::max(inc.inner_radius - r, r - inc.outer_radius);
    }
  }
  return 0.0;
}

double outer_reach(const Inclusion& inc) {
  const double c = std::abs(inc.center);
  switch (inc.shape) {
    case Inclusion::Shape::Disc:
    case Inclusion::Shape::HalfDisc:
      return c + inc.radius;
    case Inclusion::Shape::Ellipse:
      return c + std::max(inc.semi_major, inc.semi_minor);
    case Inclusion::Shape::Annulus:
      return c + inc.outer_radius;
  }
  return c;
}

double quintic_step(double x) {  // 0 at x<=0, 1 at x>=1, C^2 in between
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  return x * x * x * (10.0 + x * (-15.0 + 6.0 * x));
}

}  // namespace

PhantomSpec named_phantom(const std::string& name, double rho) {
  PhantomSpec s;
  auto disc = [](cdouble c, double r, double off) {
    Inclusion i;
    i.shape = Inclusion::Shape::Disc;
    i.center = c;
    i.radius = r;
    i.offset = off;
    return i;
  };
  if (name == "radial-smooth") {
    s.background = BackgroundBump{};
  } else if (name == "radial-1jump") {
    s.background = BackgroundBump{};
    s.inclusions.push_back(disc(0.0, 0.6, -0.3));
  } else if (name == "radial-2jump") {
    s.background = BackgroundBump{};
    s.inclusions.push_back(disc(0.0, 0.6, -0.3));
    s.inclusions.push_back(disc(0.0, 0.4, +0.3));
  } else if (name == "circle-rho") {
    s.inclusions.push_back(disc(0.0, rho, -0.3));
  } else if (name == "hme") {
    Inclusion e;
    e.shape = Inclusion::Shape::Ellipse;
    e.center = cdouble(0.0, 0.05);
    e.semi_major = 0.62;
    e.semi_minor = 0.38;
    e.rotation = 0.4;
    e.offset = 0.4;
    s.inclusions.push_back(e);
    Inclusion h;
    h.shape = Inclusion::Shape::HalfDisc;
    h.center = cdouble(0.12, -0.05);
    h.radius = 0.18;
    h.rotation = 1.0;
    h.offset = -0.3;
    s.inclusions.push_back(h);
  } else if (name == "stroke-hem" || name == "stroke-clot") {
    Inclusion skull;
    skull.shape = Inclusion::Shape::Annulus;
    skull.inner_radius = 0.72;
    skull.outer_radius = 0.84;
    skull.offset = -0.5;
    s.inclusions.push_back(skull);
    s.inclusions.push_back(disc(cdouble(0.25, 0.12), 0.22, name == "stroke-hem" ? 0.4 : -0.35));
  } else {
    throw ContractError("unknown named phantom: " + name);
  }
  return s;
}

ComplexField build_phantom(const PhantomSpec& spec, const GridPtr& grid) {
  if (spec.background) {
    const auto& b = *spec.background;
    if (std::abs(b.center) + b.radius > kSupportLimit)
      throw ContractError("phantom background bump support exceeds radius 0.95");
    if (b.amplitude <= -1.0)
      throw ContractError("phantom background bump breaks positivity");
  }
  for (const auto& inc : spec.inclusions)
    if (outer_reach(inc) > kSupportLimit)
      throw ContractError("phantom inclusion support exceeds radius 0.95");

  ComplexField sigma(grid);
  const int n = grid->n();
  const double blend_width = spec.smooth_cells * grid->spacing();
  for (int ix = 0; ix < n; ++ix) {
    for (int iy = 0; iy < n; ++iy) {
      const cdouble z = grid->point(ix, iy);
      double val = 1.0;
      if (spec.background) val += bump_value(*spec.background, z);
      for (const auto& inc : spec.inclusions) {
        const double d = signed_distance(inc, z);
        double w;
        if (blend_width > 0.0)
          w = quintic_step(0.5 - d / blend_width);
        else
          w = (d <= 0.0) ? 1.0 : 0.0;  // midpoint cell membership
        val += inc.offset * w;
      }
      sigma.v(iy, ix) = val;
    }
  }
  const double smin = sigma.v.real().minCoeff();
  if (smin <= 0.0)
    throw ContractError("phantom conductivity not positive (min sigma = " +
                        std::to_string(smin) + ")");
  return sigma;
}

ComplexField sigma_to_mu(const ComplexField& sigma) {
  if (sigma.v.imag().abs().maxCoeff() > 1e-12)
    throw ContractError("sigma_to_mu: sigma must be real-valued");
  if (sigma.v.real().minCoeff() <= 0.0)
    throw ContractError("sigma_to_mu: sigma must be positive");
  ComplexField mu(sigma.grid);
  mu.v = (1.0 - sigma.v) / (1.0 + sigma.v);
  return mu;
}

ComplexField mu_to_sigma(const ComplexField& mu_tilde, MuToSigmaReport* report) {
  const int n = mu_tilde.n();
  ComplexField sigma(mu_tilde.grid);
  double max_imag = 0.0;
  long clamped = 0;
  for (int ix = 0; ix < n; ++ix) {
    for (int iy = 0; iy < n; ++iy) {
      const cdouble m = mu_tilde.v(iy, ix);
      max_imag = std::max(max_imag, std::abs(m.imag()));
      double re = m.real();
      if (re < -0.95) {
        re = -0.95;
        ++clamped;
      } else if (re > 0.95) {
        re = 0.95;
        ++clamped;
      }
      sigma.v(iy, ix) = (1.0 - re) / (1.0 + re);
    }
  }
  if (report) {
    report->max_imag_discarded = max_imag;
    report->clamped_fraction = static_cast<double>(clamped) / (static_cast<double>(n) * n);
  }
  return sigma;
}

}  // namespace vhed
