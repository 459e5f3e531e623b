#pragma once

#include <array>
#include <complex>
#include <optional>
#include <utility>
#include <vector>

namespace chevron {

// Spatially reduced two-variable dynamics for the roll amplitude rho >= 0 and
// the director angle phi.
//
//   Uniform   : tau rho' = rho (1 - phi^2 - rho^2)
//               phi'     = phi (rho^2 - h)
//   PhaseGrad : tau rho' = rho [(1 - rho^2) - (phi - c1 chi)^2 - (1 - c1^2) chi^2]
//               phi'     = -h phi + rho^2 (phi - c2 chi)
// where chi is the frozen phase gradient along y.
struct ReducedParams {
  double tau = 1.0;
  double c1 = 0.0;
  double c2 = 0.0;
  double h = 0.0;
  double chi = 0.0;
};

enum class ReducedSystem { Uniform, PhaseGrad };

std::pair<double, double> rhs_uniform(double rho, double phi, const ReducedParams& p);
std::pair<double, double> rhs_phase_grad(double rho, double phi, const ReducedParams& p);
std::pair<double, double> rhs_reduced(ReducedSystem sys, double rho, double phi, const ReducedParams& p);

enum class PointKind {
  Saddle,
  SpiralSink,
  SpiralSource,
  NodeSink,
  NodeSource,
  CenterMarginal,
  Degenerate,
};

const char* point_kind_name(PointKind k);

struct FixedPoint {
  double rho = 0.0;
  double phi = 0.0;
  std::complex<double> lambda1{};
  std::complex<double> lambda2{};
  PointKind kind = PointKind::Degenerate;
};

struct Orbit {
  // (t, rho, phi), time ordered; first and last samples always present.
  std::vector<std::array<double, 3>> samples;
};

// Fixed-step RK4. Preserves rho = 0 exactly; throws once |rho| + |phi|
// exceeds 1e6.
Orbit integrate(ReducedSystem sys, const ReducedParams& p, double rho0, double phi0, double t_end, double dt,
                int record_stride = 1);

// All equilibria with rho >= 0, classified. Uniform: closed-form catalog.
// PhaseGrad: roots of the cubic resultant in u = rho^2 located by a sign
// scan plus bisection, then polished by Newton on the 2d system.
// Requires h > 0 (h = 0 degenerates into a continuum on the rho = 0 axis).
std::vector<FixedPoint> fixed_points(ReducedSystem sys, const ReducedParams& p, int scan_resolution = 20000);

// Linearization eigenvalues and type at an equilibrium; the point must
// satisfy the fixed-point equations to 1e-9.
FixedPoint classify(ReducedSystem sys, const ReducedParams& p, double rho, double phi);

// Largest phase gradient for which nontrivial equilibria can exist when
// c1 < 1 (the rho' circle shrinks to a point there); no bound for c1 >= 1.
std::optional<double> critical_chi(double c1);

struct PortraitOrbit {
  Orbit orbit;
  int basin = -1;  // index into the fixed-point list, -1 unresolved
};

struct Portrait {
  std::vector<FixedPoint> points;
  std::vector<PortraitOrbit> orbits;
};

Portrait portrait(ReducedSystem sys, const ReducedParams& p, const std::vector<std::pair<double, double>>& seeds,
                  double t_end, double dt, int record_stride = 1);

struct BifurcationCell {
  double c1;
  double chi;
  int count;  // equilibria with rho > 0
};

std::vector<BifurcationCell> bifurcation_scan(const std::vector<double>& c1_values,
                                              const std::vector<double>& chi_values, double c2, double h,
                                              double tau);

}  // namespace chevron
