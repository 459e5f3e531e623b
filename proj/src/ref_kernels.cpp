#include "chevron/ref_kernels.hpp"

#include <cmath>

#include "chevron/pde.hpp"

// Statement-for-statement serial twins of the OpenMP kernels. Expressions
// and summation order match the production code exactly so the results are
// bitwise identical; the tests rely on that.

namespace chevron {
namespace ref {
namespace {

template <typename T>
Field<T> aniso_serial(const Field<T>& f, double D1, double D2) {
  const int nx = f.grid.nx, ny = f.grid.ny;
  const double idx2 = 1.0 / (f.grid.dx() * f.grid.dx());
  const double idy2 = 1.0 / (f.grid.dy() * f.grid.dy());
  Field<T> out(f.grid);
  const T* v = f.data();
  T* o = out.data();
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
Field<T> d_dy_serial(const Field<T>& f) {
  const int nx = f.grid.nx, ny = f.grid.ny;
  const double i2dy = 1.0 / (2.0 * f.grid.dy());
  Field<T> out(f.grid);
  const T* v = f.data();
  T* o = out.data();
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

template <typename T>
double grad_serial(const Field<T>& f) {
  const int nx = f.grid.nx, ny = f.grid.ny;
  const double idx2 = 1.0 / (f.grid.dx() * f.grid.dx());
  const double idy2 = 1.0 / (f.grid.dy() * f.grid.dy());
  const T* v = f.data();
  double total = 0.0;
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
    total += accx * idx2 + accy * idy2;
  }
  return f.grid.cell() * total;
}

}  // namespace

RealField laplacian(const RealField& f) { return aniso_serial(f, 1.0, 1.0); }
ComplexField laplacian(const ComplexField& f) { return aniso_serial(f, 1.0, 1.0); }
RealField anisotropic_laplacian(const RealField& f, double D1, double D2) { return aniso_serial(f, D1, D2); }
RealField d_dy_real(const RealField& f) { return d_dy_serial(f); }
ComplexField d_dy_complex(const ComplexField& f) { return d_dy_serial(f); }

double l2_norm_sq(const RealField& f) {
  const int ny = f.grid.ny;
  const double* v = f.data();
  double total = 0.0;
  for (int i = 0; i < f.grid.nx; ++i) {
    double acc = 0.0;
    const double* row = v + static_cast<std::size_t>(i) * ny;
    for (int j = 0; j < ny; ++j) acc += row[j] * row[j];
    total += acc;
  }
  return f.grid.cell() * total;
}

double l2_norm_sq(const ComplexField& f) {
  const int ny = f.grid.ny;
  const std::complex<double>* v = f.data();
  double total = 0.0;
  for (int i = 0; i < f.grid.nx; ++i) {
    double acc = 0.0;
    const std::complex<double>* row = v + static_cast<std::size_t>(i) * ny;
    for (int j = 0; j < ny; ++j) acc += std::norm(row[j]);
    total += acc;
  }
  return f.grid.cell() * total;
}

double l4_norm_4(const ComplexField& f) {
  const int ny = f.grid.ny;
  const std::complex<double>* v = f.data();
  double total = 0.0;
  for (int i = 0; i < f.grid.nx; ++i) {
    double acc = 0.0;
    const std::complex<double>* row = v + static_cast<std::size_t>(i) * ny;
    for (int j = 0; j < ny; ++j) {
      double q = std::norm(row[j]);
      acc += q * q;
    }
    total += acc;
  }
  return f.grid.cell() * total;
}

double inner_product(const RealField& f, const RealField& g) {
  require_same_grid(f, g, "ref::inner_product");
  const int ny = f.grid.ny;
  const double* a = f.data();
  const double* b = g.data();
  double total = 0.0;
  for (int i = 0; i < f.grid.nx; ++i) {
    double acc = 0.0;
    std::size_t off = static_cast<std::size_t>(i) * ny;
    for (int j = 0; j < ny; ++j) acc += a[off + j] * b[off + j];
    total += acc;
  }
  return f.grid.cell() * total;
}

double grad_norm_sq(const RealField& f) { return grad_serial(f); }
double grad_norm_sq(const ComplexField& f) { return grad_serial(f); }

RhsPair rhs(const SimState& s, const ChevronParams& p) {
  s.validate();
  p.validate();
  ComplexField lapA = ref::laplacian(s.A);
  ComplexField dyA = ref::d_dy_complex(s.A);
  RealField dyphi = ref::d_dy_real(s.phi);
  RealField lphi = ref::anisotropic_laplacian(s.phi, p.D1, p.D2);

  RhsPair out{ComplexField(s.A.grid), RealField(s.A.grid)};
  const std::size_t n = s.A.size();
  for (std::size_t q = 0; q < n; ++q) {
    const std::complex<double> a = s.A.v[q];
    const double ph = s.phi.v[q];
    out.dA.v[q] = (a + lapA.v[q] - (ph * ph + std::norm(a)) * a +
                   std::complex<double>(0.0, 1.0) * (p.beta * dyphi.v[q] * a - 2.0 * p.c1 * ph * dyA.v[q])) /
                  p.tau;
    out.dphi.v[q] = lphi.v[q] - p.h * ph + ph * std::norm(a) - p.c2 * std::imag(std::conj(a) * dyA.v[q]);
  }
  return out;
}

}  // namespace ref
}  // namespace chevron
