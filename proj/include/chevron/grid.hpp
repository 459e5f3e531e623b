#pragma once

#include <cstddef>
#include <stdexcept>

namespace chevron {

// Interior-node grid on [0,Lx] x [0,Ly] with homogeneous Dirichlet boundary.
// Nodes sit at ((i+1)*dx, (j+1)*dy) for 0 <= i < nx, 0 <= j < ny; the
// boundary value is identically zero and is never stored.
struct Grid2D {
  int nx = 0, ny = 0;
  double Lx = 0.0, Ly = 0.0;

  Grid2D() = default;

  Grid2D(int nx_, int ny_, double Lx_, double Ly_) : nx(nx_), ny(ny_), Lx(Lx_), Ly(Ly_) {
    if (nx < 3 || ny < 3) throw std::invalid_argument("Grid2D: nx and ny must be at least 3");
    if (!(Lx > 0.0) || !(Ly > 0.0)) throw std::invalid_argument("Grid2D: Lx and Ly must be positive");
  }

  double dx() const { return Lx / (nx + 1); }
  double dy() const { return Ly / (ny + 1); }
  double x(int i) const { return (i + 1) * dx(); }
  double y(int j) const { return (j + 1) * dy(); }
  double cell() const { return dx() * dy(); }
  double area() const { return Lx * Ly; }

  std::size_t size() const { return static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny); }
  std::size_t idx(int i, int j) const { return static_cast<std::size_t>(i) * ny + j; }

  bool operator==(const Grid2D&) const = default;
};

}  // namespace chevron
