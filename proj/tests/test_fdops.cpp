#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "chevron/fdops.hpp"
#include "chevron/field.hpp"
#include "chevron/grid.hpp"
#include "chevron/reductions.hpp"
#include "doctest.h"

using namespace chevron;

namespace {

RealField sine_mode(const Grid2D& g, int k, int m) {
  RealField f(g);
  for (int i = 0; i < g.nx; ++i)
    for (int j = 0; j < g.ny; ++j)
      f.v[g.idx(i, j)] = std::sin(k * std::numbers::pi * g.x(i) / g.Lx) *
                         std::sin(m * std::numbers::pi * g.y(j) / g.Ly);
  return f;
}

ComplexField random_complex(const Grid2D& g, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  ComplexField f(g);
  for (auto& z : f.v) z = {u(rng), u(rng)};
  return f;
}

}  // namespace

TEST_CASE("five-point laplacian is exact on the boundary bubble") {
  // b = x (Lx - x) y (Ly - y) is a polynomial of degree two in each variable,
  // so the centered second difference reproduces its laplacian exactly; the
  // zero ghost values are the true boundary values.
  Grid2D g(19, 13, 1.4, 0.8);
  RealField b(g), want(g);
  for (int i = 0; i < g.nx; ++i) {
    for (int j = 0; j < g.ny; ++j) {
      const double x = g.x(i), y = g.y(j);
      b.v[g.idx(i, j)] = x * (g.Lx - x) * y * (g.Ly - y);
      want.v[g.idx(i, j)] = -2.0 * y * (g.Ly - y) - 2.0 * x * (g.Lx - x);
    }
  }
  RealField lap = laplacian(b);
  for (std::size_t q = 0; q < g.size(); ++q)
    CHECK(lap.v[q] == doctest::Approx(want.v[q]).epsilon(1e-12));
}

TEST_CASE("sine modes are exact discrete eigenfunctions") {
  Grid2D g(16, 24, 1.0, 2.5);
  for (int k : {1, 3}) {
    for (int m : {1, 4}) {
      RealField f = sine_mode(g, k, m);
      const double lam = sine_eigenvalue(g, k, m);
      RealField lap = laplacian(f);
      double worst = 0.0;
      for (std::size_t q = 0; q < g.size(); ++q)
        worst = std::max(worst, std::abs(lap.v[q] - lam * f.v[q]));
      CHECK(worst < 1e-12 * std::abs(lam));
      CHECK(lam < 0.0);
    }
  }
}

TEST_CASE("anisotropic laplacian splits into weighted one-dimensional parts") {
  Grid2D g(12, 12, 1.0, 1.0);
  const double D1 = 0.3, D2 = 1.7;
  RealField f = sine_mode(g, 2, 3);
  const double lam = sine_eigenvalue(g, 2, 3, D1, D2);
  RealField lap = anisotropic_laplacian(f, D1, D2);
  for (std::size_t q = 0; q < g.size(); ++q)
    CHECK(lap.v[q] == doctest::Approx(lam * f.v[q]).epsilon(1e-11));
}

TEST_CASE("centered y-derivative is exact for quadratics vanishing at the walls") {
  Grid2D g(7, 21, 1.0, 1.3);
  RealField f(g);
  for (int i = 0; i < g.nx; ++i)
    for (int j = 0; j < g.ny; ++j) {
      const double y = g.y(j);
      f.v[g.idx(i, j)] = y * (g.Ly - y);
    }
  RealField d = d_dy(f);
  for (int i = 0; i < g.nx; ++i)
    for (int j = 0; j < g.ny; ++j)
      CHECK(d.v[g.idx(i, j)] == doctest::Approx(g.Ly - 2.0 * g.y(j)).epsilon(1e-12));
}

TEST_CASE("summation by parts: -(lap f, f) equals the gradient energy") {
  Grid2D g(23, 17, 0.9, 1.1);
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 25; ++trial) {
    ComplexField f = random_complex(g, rng);
    const std::complex<double> ip = inner_product(laplacian(f), f);
    const double grad = grad_norm_sq(f);
    CHECK(std::abs(ip.real() + grad) < 1e-12 * std::max(1.0, grad));
    CHECK(std::abs(ip.imag()) < 1e-12 * std::max(1.0, grad));
  }
}

TEST_CASE("gradient energy of a sine mode matches its eigenvalue") {
  // For an exact eigenfunction, ||grad f||^2 = -lambda ||f||^2.
  Grid2D g(31, 31, 1.0, 1.0);
  RealField f = sine_mode(g, 2, 2);
  const double lam = sine_eigenvalue(g, 2, 2);
  CHECK(grad_norm_sq(f) == doctest::Approx(-lam * l2_norm_sq(f)).epsilon(1e-12));
}

TEST_CASE("sine solver inverts (sigma - D lap)") {
  Grid2D g(21, 18, 1.2, 0.7);
  const double D1 = 0.8, D2 = 1.4, sigma = 37.0;
  SineSolver solver(g, D1, D2);
  std::mt19937_64 rng(9);

  SUBCASE("real roundtrip") {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    RealField rhs(g);
    for (auto& v : rhs.v) v = u(rng);
    RealField x = solver.solve(sigma, rhs);
    RealField back = anisotropic_laplacian(x, D1, D2);
    for (std::size_t q = 0; q < g.size(); ++q)
      CHECK(sigma * x.v[q] - back.v[q] == doctest::Approx(rhs.v[q]).epsilon(1e-10));
  }

  SUBCASE("complex roundtrip") {
    ComplexField rhs = random_complex(g, rng);
    ComplexField x = solver.solve(sigma, rhs);
    ComplexField back = anisotropic_laplacian(x, D1, D2);
    for (std::size_t q = 0; q < g.size(); ++q)
      CHECK(std::abs(sigma * x.v[q] - back.v[q] - rhs.v[q]) < 1e-10);
  }
}

TEST_CASE("sine solver requires a positive shift") {
  // The laplacian spectrum is negative, so sigma > 0 keeps sigma - D lap
  // positive definite; nonpositive shifts are rejected outright.
  Grid2D g(9, 9, 1.0, 1.0);
  SineSolver solver(g, 1.0, 1.0);
  RealField rhs(g);
  rhs.v[0] = 1.0;
  CHECK_THROWS_AS(solver.solve(0.0, rhs), std::invalid_argument);
  CHECK_THROWS_AS(solver.solve(-2.0, rhs), std::invalid_argument);
}

TEST_CASE("operators demand matching grids") {
  Grid2D g1(9, 9, 1.0, 1.0), g2(9, 10, 1.0, 1.0);
  SineSolver solver(g1, 1.0, 1.0);
  RealField rhs(g2);
  CHECK_THROWS_AS(solver.solve(1.0, rhs), std::invalid_argument);
}

TEST_CASE("eigenvalue helper rejects out-of-range modes") {
  Grid2D g(8, 8, 1.0, 1.0);
  CHECK_THROWS_AS(sine_eigenvalue(g, 0, 1), std::invalid_argument);
  CHECK_THROWS_AS(sine_eigenvalue(g, 1, 9), std::invalid_argument);
  CHECK_NOTHROW(sine_eigenvalue(g, 8, 8));
}
