#pragma once

#include <memory>
#include <vector>

#include "chevron/field.hpp"

namespace chevron {

// Five-point Laplacian with zero ghost values outside the stored interior.
RealField laplacian(const RealField& f);
ComplexField laplacian(const ComplexField& f);

// D1 d2/dx2 + D2 d2/dy2 with the same ghost convention.
RealField anisotropic_laplacian(const RealField& f, double D1, double D2);
ComplexField anisotropic_laplacian(const ComplexField& f, double D1, double D2);

// Central y-derivative, zero ghosts.
RealField d_dy(const RealField& f);
ComplexField d_dy(const ComplexField& f);

// Forward-difference gradient energy including the faces that touch the
// boundary, so that -(lap f, f) == grad_norm_sq(f) holds exactly.
double grad_norm_sq(const RealField& f);
double grad_norm_sq(const ComplexField& f);

// Eigenvalue of the discrete operator D1 d2/dx2 + D2 d2/dy2 on the sine mode
// (k, m), k and m 1-based.
double sine_eigenvalue(const Grid2D& g, int k, int m, double D1 = 1.0, double D2 = 1.0);

// Solves (sigma I - (D1 d2/dx2 + D2 d2/dy2)) u = rhs, sigma > 0, by
// diagonalization in the discrete sine basis. Transforms are plain
// matrix products, O(N (nx + ny)) per solve.
class SineSolver {
 public:
  SineSolver(const Grid2D& grid, double D1, double D2);

  RealField solve(double sigma, const RealField& rhs) const;
  ComplexField solve(double sigma, const ComplexField& rhs) const;

  const Grid2D& grid() const { return grid_; }
  double D1() const { return D1_; }
  double D2() const { return D2_; }

 private:
  Grid2D grid_;
  double D1_, D2_;
  std::vector<double> Sx_;    // nx x nx symmetric sine matrix
  std::vector<double> Sy_;    // ny x ny
  std::vector<double> lamx_;  // 1d eigenvalues, x axis
  std::vector<double> lamy_;
};

}  // namespace chevron
