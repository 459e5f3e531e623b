#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "chevron/field.hpp"
#include "chevron/params.hpp"
#include "chevron/pde.hpp"
#include "chevron/polar.hpp"
#include "doctest.h"

using namespace chevron;

namespace {

ChevronParams coupled_params() {
  ChevronParams p;
  p.tau = 0.8;
  p.D1 = 1.0;
  p.D2 = 0.6;
  p.c1 = 0.7;
  p.c2 = 1.1;
  p.h = 0.4;
  p.beta = 0.3;
  return p;
}

PolarState random_vortex_free(const Grid2D& g, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  PolarState ps{RealField(g), RealField(g), RealField(g), 0.0};
  for (std::size_t q = 0; q < g.size(); ++q) {
    ps.rho.v[q] = 0.4 + 0.5 * u01(rng);
    ps.psi.v[q] = -3.0 + 6.0 * u01(rng);
    ps.phi.v[q] = -0.7 + 1.4 * u01(rng);
  }
  return ps;
}

}  // namespace

TEST_CASE("polar decomposition round trips") {
  Grid2D g(13, 11, 1.0, 1.2);
  std::mt19937_64 rng(2);
  PolarState ps = random_vortex_free(g, rng);
  SimState s = from_polar(ps);
  PolarState back = to_polar(s);
  for (std::size_t q = 0; q < g.size(); ++q) {
    CHECK(back.rho.v[q] == doctest::Approx(ps.rho.v[q]).epsilon(1e-14));
    // angles come back reduced to (-pi, pi]
    const double dpsi = std::remainder(back.psi.v[q] - ps.psi.v[q], 2.0 * std::numbers::pi);
    CHECK(std::abs(dpsi) < 1e-13);
    CHECK(back.phi.v[q] == ps.phi.v[q]);
  }
  SimState s2 = from_polar(back);
  for (std::size_t q = 0; q < g.size(); ++q) CHECK(std::abs(s2.A.v[q] - s.A.v[q]) < 1e-13);
}

TEST_CASE("to_polar normalizes the angle into (-pi, pi] and zeroes it with rho") {
  Grid2D g(3, 3, 1.0, 1.0);
  SimState s(g);
  s.A.v[0] = {-2.0, 0.0};   // arg = pi stays pi
  s.A.v[1] = {-2.0, -0.0};  // arg = -pi must be folded to +pi
  s.A.v[2] = {0.0, 0.0};
  PolarState ps = to_polar(s);
  CHECK(ps.psi.v[0] == doctest::Approx(std::numbers::pi));
  CHECK(ps.psi.v[1] == doctest::Approx(std::numbers::pi));
  CHECK(ps.psi.v[1] > 0.0);
  CHECK(ps.rho.v[2] == 0.0);
  CHECK(ps.psi.v[2] == 0.0);
}

TEST_CASE("from_polar rejects negative amplitudes") {
  Grid2D g(5, 5, 1.0, 1.0);
  PolarState ps{RealField(g), RealField(g), RealField(g), 0.0};
  ps.rho.v[7] = -0.1;
  CHECK_THROWS_AS(from_polar(ps), std::invalid_argument);
}

TEST_CASE("polar rhs requires the amplitude to clear the vortex floor") {
  Grid2D g(5, 5, 1.0, 1.0);
  std::mt19937_64 rng(4);
  PolarState ps = random_vortex_free(g, rng);
  ps.rho.v[12] = 0.5 * kRhoMin;
  CHECK_THROWS_AS(rhs_polar(ps, coupled_params()), std::domain_error);
}

TEST_CASE("polar rhs is invariant under a constant phase shift") {
  Grid2D g(15, 17, 1.1, 0.9);
  std::mt19937_64 rng(6);
  PolarState ps = random_vortex_free(g, rng);
  PolarState shifted = ps;
  for (auto& v : shifted.psi.v) v += 0.7;
  PolarRhs a = rhs_polar(ps, coupled_params());
  PolarRhs b = rhs_polar(shifted, coupled_params());
  for (std::size_t q = 0; q < g.size(); ++q) {
    CHECK(b.drho.v[q] == doctest::Approx(a.drho.v[q]).epsilon(1e-11));
    CHECK(b.dpsi.v[q] == doctest::Approx(a.dpsi.v[q]).epsilon(1e-11));
    CHECK(b.dphi.v[q] == doctest::Approx(a.dphi.v[q]).epsilon(1e-11));
  }
}

TEST_CASE("polar rhs equals the chain-rule image of the cartesian rhs") {
  Grid2D g(19, 23, 1.0, 1.3);
  ChevronParams p = coupled_params();
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 10; ++trial) {
    PolarState ps = random_vortex_free(g, rng);
    PolarRhs pr = rhs_polar(ps, p);
    RhsPair cart = rhs(from_polar(ps), p);
    for (std::size_t q = 0; q < g.size(); ++q) {
      const std::complex<double> rot =
          std::exp(std::complex<double>(0.0, -ps.psi.v[q])) * cart.dA.v[q];
      CHECK(std::abs(rot.real() - pr.drho.v[q]) < 1e-10);
      CHECK(std::abs(rot.imag() / ps.rho.v[q] - pr.dpsi.v[q]) < 1e-10);
      CHECK(std::abs(cart.dphi.v[q] - pr.dphi.v[q]) < 1e-10);
    }
  }
}

TEST_CASE("the uniform equilibrium is stationary at the center in polar form") {
  // (rho, phi) = (0.5, sqrt(0.75)) solves the uniform reduced system with
  // h = 0.25; constant interior data makes the stencils vanish at the center.
  Grid2D g(65, 65, 1.0, 1.0);
  ChevronParams p = coupled_params();
  p.h = 0.25;
  PolarState ps{RealField(g), RealField(g), RealField(g), 0.0};
  for (std::size_t q = 0; q < g.size(); ++q) {
    ps.rho.v[q] = 0.5;
    ps.psi.v[q] = 0.0;
    ps.phi.v[q] = std::sqrt(0.75);
  }
  PolarRhs r = rhs_polar(ps, p);
  const std::size_t c = g.idx(32, 32);
  CHECK(std::abs(r.drho.v[c]) < 1e-13);
  CHECK(std::abs(r.dpsi.v[c]) < 1e-13);
  CHECK(std::abs(r.dphi.v[c]) < 1e-13);
}

TEST_CASE("polar rhs converges at second order to the smooth-field limit") {
  // Manufactured smooth state; compare against the continuum right-hand side
  // on the center band, where the stencils never touch the boundary ghosts.
  ChevronParams p = coupled_params();
  const double pi = std::numbers::pi;
  auto max_err = [&](int n) {
    Grid2D g(n, n, 1.0, 1.0);
    PolarState ps{RealField(g), RealField(g), RealField(g), 0.0};
    for (int i = 0; i < g.nx; ++i)
      for (int j = 0; j < g.ny; ++j) {
        const double sx = std::sin(pi * g.x(i)), sy = std::sin(pi * g.y(j));
        const double cy = std::cos(pi * g.y(j));
        ps.rho.v[g.idx(i, j)] = 0.6 + 0.2 * sx * sy;
        ps.psi.v[g.idx(i, j)] = 0.3 * sx * cy;
        ps.phi.v[g.idx(i, j)] = 0.25 * sx * sy;
      }
    PolarRhs r = rhs_polar(ps, p);
    double worst = 0.0;
    for (int i = n / 4; i < 3 * n / 4; ++i)
      for (int j = n / 4; j < 3 * n / 4; ++j) {
        const double x = g.x(i), y = g.y(j);
        const double sx = std::sin(pi * x), cx = std::cos(pi * x);
        const double sy = std::sin(pi * y), cy = std::cos(pi * y);
        const double rho = 0.6 + 0.2 * sx * sy;
        const double psi = 0.3 * sx * cy;
        const double phi = 0.25 * sx * sy;
        const double rho_x = 0.2 * pi * cx * sy, rho_y = 0.2 * pi * sx * cy;
        const double lap_rho = -2.0 * pi * pi * (rho - 0.6);
        const double psi_x = 0.3 * pi * cx * cy, psi_y = -0.3 * pi * sx * sy;
        const double lap_psi = -2.0 * pi * pi * psi;
        const double phi_y = 0.25 * pi * sx * cy;
        const double dlap_phi = -(p.D1 + p.D2) * pi * pi * phi;
        const double drho = (lap_rho - rho * (psi_x * psi_x + psi_y * psi_y) + rho +
                             2.0 * p.c1 * rho * phi * psi_y - phi * phi * rho -
                             rho * rho * rho) /
                            p.tau;
        const double dpsi = (lap_psi + 2.0 * (rho_x * psi_x + rho_y * psi_y) / rho -
                             2.0 * p.c1 * phi * rho_y / rho + p.beta * phi_y) /
                            p.tau;
        const double dphi =
            dlap_phi - p.h * phi + phi * rho * rho - p.c2 * rho * rho * psi_y;
        worst = std::max({worst, std::abs(r.drho.v[g.idx(i, j)] - drho),
                          std::abs(r.dpsi.v[g.idx(i, j)] - dpsi),
                          std::abs(r.dphi.v[g.idx(i, j)] - dphi)});
      }
    return worst;
  };
  const double e_coarse = max_err(24);  // dx = 1/25
  const double e_fine = max_err(49);    // dx = 1/50
  CHECK(e_coarse / e_fine == doctest::Approx(4.0).epsilon(0.2));
}
