#pragma once

#include "chevron/field.hpp"
#include "chevron/params.hpp"

namespace chevron {

// Amplitude/phase form A = rho e^{i psi}. psi is stored in (-pi, pi] and set
// to zero wherever rho vanishes.
struct PolarState {
  RealField rho;
  RealField psi;
  RealField phi;
  double t = 0.0;
};

inline constexpr double kRhoMin = 1e-6;

PolarState to_polar(const SimState& s);

// Throws on negative rho.
SimState from_polar(const PolarState& ps);

struct PolarRhs {
  RealField drho;
  RealField dpsi;
  RealField dphi;
};

// Right-hand side of the polar-form system
//   tau drho = lap rho - rho |grad psi|^2 + rho + 2 c1 rho phi dpsi/dy - phi^2 rho - rho^3
//   tau dpsi = lap psi + 2 grad rho . grad psi / rho - 2 c1 phi drho/dy / rho + beta dphi/dy
//       dphi = D-diffusion - h phi + phi rho^2 - c2 rho^2 dpsi/dy
//
// The derivative groups (lap-psi block, d/dy of rho and psi) are extracted
// from the finite-difference stencils of the reconstructed complex field
// rho e^{i psi}: that is the exact discrete image of the Cartesian system,
// needs no phase unwrapping, and keeps the divisions by rho explicit.
// Requires rho >= kRhoMin everywhere (no phase singularity).
PolarRhs rhs_polar(const PolarState& ps, const ChevronParams& p);

}  // namespace chevron
