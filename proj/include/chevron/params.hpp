#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace chevron {

// Coefficients of the coupled amplitude / director-angle system
//
//   tau dA/dt  = A + lap A - phi^2 A - |A|^2 A - 2 i c1 phi dA/dy + i beta A dphi/dy
//       dphi/dt = D1 d2phi/dx2 + D2 d2phi/dy2 - h phi + phi |A|^2 - c2 Im[conj(A) dA/dy]
//
// on a rectangle with homogeneous Dirichlet conditions.
struct ChevronParams {
  double tau = 1.0;   // amplitude relaxation time, > 0
  double D1 = 1.0;    // director diffusion across the rolls, > 0
  double D2 = 1.0;    // director diffusion along the rolls, > 0
  double c1 = 0.0;    // director -> phase torque, >= 0
  double c2 = 0.0;    // phase -> director torque, >= 0
  double h = 0.0;     // restoring rate pulling phi back to zero, >= 0
  double beta = 0.0;  // amplitude/director-gradient coupling

  void validate() const {
    auto bad = [](double v) { return !std::isfinite(v); };
    if (bad(tau) || bad(D1) || bad(D2) || bad(c1) || bad(c2) || bad(h) || bad(beta))
      throw std::invalid_argument("ChevronParams: non-finite coefficient");
    if (!(tau > 0.0)) throw std::invalid_argument("ChevronParams: tau must be positive");
    if (!(D1 > 0.0) || !(D2 > 0.0)) throw std::invalid_argument("ChevronParams: D1, D2 must be positive");
    if (c1 < 0.0 || c2 < 0.0) throw std::invalid_argument("ChevronParams: c1, c2 must be nonnegative");
    if (h < 0.0) throw std::invalid_argument("ChevronParams: h must be nonnegative");
  }

  // Parameter region where the energy estimates close and global bounds hold.
  bool dissipative_regime() const { return c1 < 1.0 || (c2 > 0.0 && c1 >= 2.0 * c2); }
};

}  // namespace chevron
