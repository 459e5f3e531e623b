#include "chevron/reductions.hpp"

#include <cmath>
#include <vector>

namespace chevron {
namespace {

// One partial per grid row, combined in index order: deterministic for any
// thread count.
template <typename RowFn>
double sum_rows(int nx, RowFn row) {
  std::vector<double> part(static_cast<std::size_t>(nx));
#pragma omp parallel for schedule(static) if (nx > 8)
  for (int i = 0; i < nx; ++i) part[i] = row(i);
  double total = 0.0;
  for (int i = 0; i < nx; ++i) total += part[i];
  return total;
}

}  // namespace

double l2_norm_sq(const RealField& f) {
  const int ny = f.grid.ny;
  const double* v = f.data();
  double s = sum_rows(f.grid.nx, [=](int i) {
    double acc = 0.0;
    const double* row = v + static_cast<std::size_t>(i) * ny;
    for (int j = 0; j < ny; ++j) acc += row[j] * row[j];
    return acc;
  });
  return f.grid.cell() * s;
}

double l2_norm_sq(const ComplexField& f) {
  const int ny = f.grid.ny;
  const std::complex<double>* v = f.data();
  double s = sum_rows(f.grid.nx, [=](int i) {
    double acc = 0.0;
    const std::complex<double>* row = v + static_cast<std::size_t>(i) * ny;
    for (int j = 0; j < ny; ++j) acc += std::norm(row[j]);
    return acc;
  });
  return f.grid.cell() * s;
}

double l4_norm_4(const RealField& f) {
  const int ny = f.grid.ny;
  const double* v = f.data();
  double s = sum_rows(f.grid.nx, [=](int i) {
    double acc = 0.0;
    const double* row = v + static_cast<std::size_t>(i) * ny;
    for (int j = 0; j < ny; ++j) {
      double q = row[j] * row[j];
      acc += q * q;
    }
    return acc;
  });
  return f.grid.cell() * s;
}

double l4_norm_4(const ComplexField& f) {
  const int ny = f.grid.ny;
  const std::complex<double>* v = f.data();
  double s = sum_rows(f.grid.nx, [=](int i) {
    double acc = 0.0;
    const std::complex<double>* row = v + static_cast<std::size_t>(i) * ny;
    for (int j = 0; j < ny; ++j) {
      double q = std::norm(row[j]);
      acc += q * q;
    }
    return acc;
  });
  return f.grid.cell() * s;
}

double inner_product(const RealField& f, const RealField& g) {
  require_same_grid(f, g, "inner_product");
  const int ny = f.grid.ny;
  const double* a = f.data();
  const double* b = g.data();
  double s = sum_rows(f.grid.nx, [=](int i) {
    double acc = 0.0;
    std::size_t off = static_cast<std::size_t>(i) * ny;
    for (int j = 0; j < ny; ++j) acc += a[off + j] * b[off + j];
    return acc;
  });
  return f.grid.cell() * s;
}

std::complex<double> inner_product(const ComplexField& f, const ComplexField& g) {
  require_same_grid(f, g, "inner_product");
  const int nx = f.grid.nx, ny = f.grid.ny;
  const std::complex<double>* a = f.data();
  const std::complex<double>* b = g.data();
  std::vector<double> pre(static_cast<std::size_t>(nx)), pim(static_cast<std::size_t>(nx));
#pragma omp parallel for schedule(static) if (nx > 8)
  for (int i = 0; i < nx; ++i) {
    double re = 0.0, im = 0.0;
    std::size_t off = static_cast<std::size_t>(i) * ny;
    for (int j = 0; j < ny; ++j) {
      std::complex<double> z = a[off + j] * std::conj(b[off + j]);
      re += z.real();
      im += z.imag();
    }
    pre[i] = re;
    pim[i] = im;
  }
  double re = 0.0, im = 0.0;
  for (int i = 0; i < nx; ++i) {
    re += pre[i];
    im += pim[i];
  }
  return f.grid.cell() * std::complex<double>(re, im);
}

double max_abs(const RealField& f) {
  const int nx = f.grid.nx, ny = f.grid.ny;
  const double* v = f.data();
  std::vector<double> part(static_cast<std::size_t>(nx), 0.0);
#pragma omp parallel for schedule(static) if (nx > 8)
  for (int i = 0; i < nx; ++i) {
    double m = 0.0;
    std::size_t off = static_cast<std::size_t>(i) * ny;
    for (int j = 0; j < ny; ++j) {
      double q = std::abs(v[off + j]);
      if (q > m || std::isnan(q)) m = q;
    }
    part[i] = m;
  }
  double m = 0.0;
  for (int i = 0; i < nx; ++i)
    if (part[i] > m || std::isnan(part[i])) m = part[i];
  return m;
}

double max_abs(const ComplexField& f) {
  const int nx = f.grid.nx, ny = f.grid.ny;
  const std::complex<double>* v = f.data();
  std::vector<double> part(static_cast<std::size_t>(nx), 0.0);
#pragma omp parallel for schedule(static) if (nx > 8)
  for (int i = 0; i < nx; ++i) {
    double m = 0.0;
    std::size_t off = static_cast<std::size_t>(i) * ny;
    for (int j = 0; j < ny; ++j) {
      double q = std::abs(v[off + j]);
      if (q > m || std::isnan(q)) m = q;
    }
    part[i] = m;
  }
  double m = 0.0;
  for (int i = 0; i < nx; ++i)
    if (part[i] > m || std::isnan(part[i])) m = part[i];
  return m;
}

bool all_finite(const RealField& f) {
  for (std::size_t n = 0; n < f.size(); ++n)
    if (!std::isfinite(f.v[n])) return false;
  return true;
}

bool all_finite(const ComplexField& f) {
  for (std::size_t n = 0; n < f.size(); ++n)
    if (!std::isfinite(f.v[n].real()) || !std::isfinite(f.v[n].imag())) return false;
  return true;
}

}  // namespace chevron
