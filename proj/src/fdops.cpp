#include "chevron/fdops.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace chevron {
namespace {

template <typename T>
Field<T> aniso_impl(const Field<T>& f, double D1, double D2) {
  const int nx = f.grid.nx, ny = f.grid.ny;
  const double idx2 = 1.0 / (f.grid.dx() * f.grid.dx());
  const double idy2 = 1.0 / (f.grid.dy() * f.grid.dy());
  Field<T> out(f.grid);
  const T* v = f.data();
  T* o = out.data();
#pragma omp parallel for schedule(static) if (nx * ny > 4096)
  for (int i = 0; i < nx; ++i) {
    std::size_t off = static_cast<std::size_t>(i) * ny;
    for (int j = 0; j < ny; ++j) {
      T c = v[off + j];
      T xm = (i > 0) ? v[off - ny + j] : T{};
      T xp = (i < nx - 1) ? v[off + ny + j] : T{};
      T ym = (j > 0) ? v[off + j - 1] : T{};
      T yp = (j < ny - 1) ? v[off + j + 1] : T{};
      o[off + j] = D1 * ((xm + xp - 2.0 * c) * idx2) + D2 * ((ym + yp - 2.0 * c) * idy2);
    }
  }
  return out;
}

template <typename T>
Field<T> d_dy_impl(const Field<T>& f) {
  const int nx = f.grid.nx, ny = f.grid.ny;
  const double i2dy = 1.0 / (2.0 * f.grid.dy());
  Field<T> out(f.grid);
  const T* v = f.data();
  T* o = out.data();
#pragma omp parallel for schedule(static) if (nx * ny > 4096)
  for (int i = 0; i < nx; ++i) {
    std::size_t off = static_cast<std::size_t>(i) * ny;
    for (int j = 0; j < ny; ++j) {
      T ym = (j > 0) ? v[off + j - 1] : T{};
      T yp = (j < ny - 1) ? v[off + j + 1] : T{};
      o[off + j] = (yp - ym) * i2dy;
    }
  }
  return out;
}

inline double sq_mag(double x) { return x * x; }
inline double sq_mag(const std::complex<double>& z) { return std::norm(z); }

// Forward differences across every face, boundary faces included; paired
// with the zero-ghost Laplacian this satisfies the discrete Green identity
// -(lap f, f) = grad_norm_sq(f) exactly.
template <typename T>
double grad_impl(const Field<T>& f) {
  const int nx = f.grid.nx, ny = f.grid.ny;
  const double idx2 = 1.0 / (f.grid.dx() * f.grid.dx());
  const double idy2 = 1.0 / (f.grid.dy() * f.grid.dy());
  const T* v = f.data();

  std::vector<double> part(static_cast<std::size_t>(nx) + 1, 0.0);
#pragma omp parallel for schedule(static) if (nx * ny > 4096)
  for (int i = 0; i <= nx; ++i) {
    double accx = 0.0;
    for (int j = 0; j < ny; ++j) {
      T a = (i < nx) ? v[static_cast<std::size_t>(i) * ny + j] : T{};
      T b = (i > 0) ? v[static_cast<std::size_t>(i - 1) * ny + j] : T{};
      accx += sq_mag(a - b);
    }
    double accy = 0.0;
    if (i < nx) {
      std::size_t off = static_cast<std::size_t>(i) * ny;
      for (int j = 0; j <= ny; ++j) {
        T a = (j < ny) ? v[off + j] : T{};
        T b = (j > 0) ? v[off + j - 1] : T{};
        accy += sq_mag(a - b);
      }
    }
    part[i] = accx * idx2 + accy * idy2;
  }
  double total = 0.0;
  for (int i = 0; i <= nx; ++i) total += part[i];
  return f.grid.cell() * total;
}

}  // namespace

RealField laplacian(const RealField& f) { return aniso_impl(f, 1.0, 1.0); }
ComplexField laplacian(const ComplexField& f) { return aniso_impl(f, 1.0, 1.0); }

RealField anisotropic_laplacian(const RealField& f, double D1, double D2) {
  if (!(D1 > 0.0) || !(D2 > 0.0)) throw std::invalid_argument("anisotropic_laplacian: D1, D2 must be positive");
  return aniso_impl(f, D1, D2);
}

ComplexField anisotropic_laplacian(const ComplexField& f, double D1, double D2) {
  if (!(D1 > 0.0) || !(D2 > 0.0)) throw std::invalid_argument("anisotropic_laplacian: D1, D2 must be positive");
  return aniso_impl(f, D1, D2);
}

RealField d_dy(const RealField& f) { return d_dy_impl(f); }
ComplexField d_dy(const ComplexField& f) { return d_dy_impl(f); }

double grad_norm_sq(const RealField& f) { return grad_impl(f); }
double grad_norm_sq(const ComplexField& f) { return grad_impl(f); }

double sine_eigenvalue(const Grid2D& g, int k, int m, double D1, double D2) {
  if (k < 1 || m < 1 || k > g.nx || m > g.ny) throw std::invalid_argument("sine_eigenvalue: mode out of range");
  const double dx = g.dx(), dy = g.dy();
  const double lx = -(2.0 / (dx * dx)) * (1.0 - std::cos(k * std::numbers::pi / (g.nx + 1)));
  const double ly = -(2.0 / (dy * dy)) * (1.0 - std::cos(m * std::numbers::pi / (g.ny + 1)));
  return D1 * lx + D2 * ly;
}

SineSolver::SineSolver(const Grid2D& grid, double D1, double D2) : grid_(grid), D1_(D1), D2_(D2) {
  if (!(D1 > 0.0) || !(D2 > 0.0)) throw std::invalid_argument("SineSolver: D1, D2 must be positive");
  const int nx = grid.nx, ny = grid.ny;
  Sx_.resize(static_cast<std::size_t>(nx) * nx);
  Sy_.resize(static_cast<std::size_t>(ny) * ny);
  lamx_.resize(nx);
  lamy_.resize(ny);
  const double dx = grid.dx(), dy = grid.dy();
  for (int k = 0; k < nx; ++k) {
    lamx_[k] = -(2.0 / (dx * dx)) * (1.0 - std::cos((k + 1) * std::numbers::pi / (nx + 1)));
    for (int i = 0; i < nx; ++i)
      Sx_[static_cast<std::size_t>(k) * nx + i] =
          std::sin(static_cast<double>(k + 1) * (i + 1) * std::numbers::pi / (nx + 1));
  }
  for (int m = 0; m < ny; ++m) {
    lamy_[m] = -(2.0 / (dy * dy)) * (1.0 - std::cos((m + 1) * std::numbers::pi / (ny + 1)));
    for (int j = 0; j < ny; ++j)
      Sy_[static_cast<std::size_t>(m) * ny + j] =
          std::sin(static_cast<double>(m + 1) * (j + 1) * std::numbers::pi / (ny + 1));
  }
}

namespace {

// out = S * M, S symmetric n x n, M n x ny.
void mul_left(std::vector<double>& out, const std::vector<double>& S, const std::vector<double>& M, int n,
              int ny) {
#pragma omp parallel for schedule(static) if (n * ny > 4096)
  for (int k = 0; k < n; ++k) {
    double* orow = out.data() + static_cast<std::size_t>(k) * ny;
    for (int j = 0; j < ny; ++j) orow[j] = 0.0;
    const double* srow = S.data() + static_cast<std::size_t>(k) * n;
    for (int i = 0; i < n; ++i) {
      const double s = srow[i];
      const double* mrow = M.data() + static_cast<std::size_t>(i) * ny;
      for (int j = 0; j < ny; ++j) orow[j] += s * mrow[j];
    }
  }
}

// out = M * S^T = M * S (S symmetric ny x ny), M nx x ny.
void mul_right(std::vector<double>& out, const std::vector<double>& M, const std::vector<double>& S, int nx,
               int ny) {
#pragma omp parallel for schedule(static) if (nx * ny > 4096)
  for (int i = 0; i < nx; ++i) {
    const double* mrow = M.data() + static_cast<std::size_t>(i) * ny;
    double* orow = out.data() + static_cast<std::size_t>(i) * ny;
    for (int m = 0; m < ny; ++m) {
      const double* srow = S.data() + static_cast<std::size_t>(m) * ny;
      double acc = 0.0;
      for (int j = 0; j < ny; ++j) acc += mrow[j] * srow[j];
      orow[m] = acc;
    }
  }
}

}  // namespace

RealField SineSolver::solve(double sigma, const RealField& rhs) const {
  if (!(rhs.grid == grid_)) throw std::invalid_argument("SineSolver::solve: grid mismatch");
  if (!(sigma > 0.0)) throw std::invalid_argument("SineSolver::solve: sigma must be positive");
  const int nx = grid_.nx, ny = grid_.ny;
  const std::size_t n = grid_.size();
  std::vector<double> t1(n), t2(n);
  mul_left(t1, Sx_, rhs.v, nx, ny);
  mul_right(t2, t1, Sy_, nx, ny);
  const double norm = 4.0 / (static_cast<double>(nx + 1) * (ny + 1));
#pragma omp parallel for schedule(static) if (nx * ny > 4096)
  for (int k = 0; k < nx; ++k) {
    double* row = t2.data() + static_cast<std::size_t>(k) * ny;
    for (int m = 0; m < ny; ++m) row[m] = norm * row[m] / (sigma - (D1_ * lamx_[k] + D2_ * lamy_[m]));
  }
  RealField out(grid_);
  mul_left(t1, Sx_, t2, nx, ny);
  mul_right(out.v, t1, Sy_, nx, ny);
  return out;
}

ComplexField SineSolver::solve(double sigma, const ComplexField& rhs) const {
  if (!(rhs.grid == grid_)) throw std::invalid_argument("SineSolver::solve: grid mismatch");
  RealField re(grid_), im(grid_);
  for (std::size_t n = 0; n < rhs.size(); ++n) {
    re.v[n] = rhs.v[n].real();
    im.v[n] = rhs.v[n].imag();
  }
  RealField sre = solve(sigma, re);
  RealField sim = solve(sigma, im);
  ComplexField out(grid_);
  for (std::size_t n = 0; n < out.size(); ++n) out.v[n] = {sre.v[n], sim.v[n]};
  return out;
}

}  // namespace chevron
