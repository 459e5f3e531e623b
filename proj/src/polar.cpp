#include "chevron/polar.hpp"

#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>

#include "chevron/fdops.hpp"
#include "chevron/reductions.hpp"

namespace chevron {

namespace {

void require_polar_grids(const PolarState& ps, const char* what) {
  if (!(ps.rho.grid == ps.psi.grid) || !(ps.rho.grid == ps.phi.grid)) {
    throw std::invalid_argument(std::string(what) + ": rho, psi, phi live on different grids");
  }
}

}  // namespace

PolarState to_polar(const SimState& s) {
  s.validate();
  PolarState ps{RealField(s.grid()), RealField(s.grid()), s.phi, s.t};
  for (std::size_t q = 0; q < s.A.size(); ++q) {
    double r = std::abs(s.A.v[q]);
    ps.rho.v[q] = r;
    if (r == 0.0) {
      ps.psi.v[q] = 0.0;
    } else {
      double a = std::arg(s.A.v[q]);
      if (a == -std::numbers::pi) a = std::numbers::pi;  // keep psi in (-pi, pi]
      ps.psi.v[q] = a;
    }
  }
  return ps;
}

SimState from_polar(const PolarState& ps) {
  require_polar_grids(ps, "from_polar");
  SimState s(ps.rho.grid);
  s.t = ps.t;
  s.phi = ps.phi;
  for (std::size_t q = 0; q < ps.rho.size(); ++q) {
    double r = ps.rho.v[q];
    if (r < 0.0) throw std::invalid_argument("from_polar: negative rho");
    s.A.v[q] = std::complex<double>(r * std::cos(ps.psi.v[q]), r * std::sin(ps.psi.v[q]));
  }
  return s;
}

PolarRhs rhs_polar(const PolarState& ps, const ChevronParams& p) {
  require_polar_grids(ps, "rhs_polar");
  p.validate();
  const Grid2D& g = ps.rho.grid;
  for (int i = 0; i < g.nx; ++i) {
    for (int j = 0; j < g.ny; ++j) {
      if (!(ps.rho(i, j) >= kRhoMin)) {
        throw std::domain_error("rhs_polar: rho below " + std::to_string(kRhoMin) + " at node (" +
                                std::to_string(i) + ", " + std::to_string(j) +
                                "), phase is not defined there");
      }
    }
  }

  // Reconstruct A = rho e^{i psi} and pull the derivative groups out of its
  // stencils. Writing the groups this way keeps the polar right-hand side the
  // exact discrete image of the Cartesian one.
  ComplexField A(g);
  for (std::size_t q = 0; q < A.size(); ++q) {
    A.v[q] = std::complex<double>(ps.rho.v[q] * std::cos(ps.psi.v[q]),
                                  ps.rho.v[q] * std::sin(ps.psi.v[q]));
  }
  ComplexField lapA = laplacian(A);
  ComplexField dyA = d_dy(A);
  RealField dyphi = d_dy(ps.phi);
  RealField lphi = anisotropic_laplacian(ps.phi, p.D1, p.D2);

  PolarRhs out{RealField(g), RealField(g), RealField(g)};
  const std::int64_t n = static_cast<std::int64_t>(A.size());
#pragma omp parallel for schedule(static) if (n > 4096)
  for (std::int64_t q = 0; q < n; ++q) {
    const double r = ps.rho.v[q];
    const double ph = ps.phi.v[q];
    const double c = std::cos(ps.psi.v[q]);
    const double s = std::sin(ps.psi.v[q]);
    // P = e^{-i psi} lap A  (real part: lap rho - rho |grad psi|^2, imag
    // part: rho lap psi + 2 grad rho . grad psi, in the continuum limit)
    const double Pre = c * lapA.v[q].real() + s * lapA.v[q].imag();
    const double Pim = c * lapA.v[q].imag() - s * lapA.v[q].real();
    // Q = e^{-i psi} dA/dy  (drho/dy, rho dpsi/dy)
    const double Qre = c * dyA.v[q].real() + s * dyA.v[q].imag();
    const double Qim = c * dyA.v[q].imag() - s * dyA.v[q].real();

    out.drho.v[q] = (Pre + r - ph * ph * r - r * r * r + 2.0 * p.c1 * ph * Qim) / p.tau;
    out.dpsi.v[q] = (Pim / r - 2.0 * p.c1 * ph * Qre / r + p.beta * dyphi.v[q]) / p.tau;
    out.dphi.v[q] = lphi.v[q] - p.h * ph + ph * (r * r) - p.c2 * r * Qim;
  }
  return out;
}

}  // namespace chevron
