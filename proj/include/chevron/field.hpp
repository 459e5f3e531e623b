#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include "chevron/grid.hpp"

namespace chevron {

template <typename T>
struct Field {
  Grid2D grid;
  std::vector<T> v;  // row-major, index i*ny + j

  Field() = default;
  explicit Field(const Grid2D& g) : grid(g), v(g.size(), T{}) {}

  T& operator()(int i, int j) { return v[grid.idx(i, j)]; }
  const T& operator()(int i, int j) const { return v[grid.idx(i, j)]; }

  T* data() { return v.data(); }
  const T* data() const { return v.data(); }
  std::size_t size() const { return v.size(); }

  void fill(T value) { std::fill(v.begin(), v.end(), value); }
};

using RealField = Field<double>;
using ComplexField = Field<std::complex<double>>;

template <typename T, typename U>
void require_same_grid(const Field<T>& a, const Field<U>& b, const char* what) {
  if (!(a.grid == b.grid)) throw std::invalid_argument(std::string(what) + ": grid mismatch");
}

// Small serial helpers for building test states; hot paths in pde.cpp fuse
// their own loops.
template <typename T>
Field<T> add_fields(const Field<T>& a, const Field<T>& b) {
  require_same_grid(a, b, "add_fields");
  Field<T> out(a.grid);
  for (std::size_t n = 0; n < a.size(); ++n) out.v[n] = a.v[n] + b.v[n];
  return out;
}

template <typename T>
Field<T> sub_fields(const Field<T>& a, const Field<T>& b) {
  require_same_grid(a, b, "sub_fields");
  Field<T> out(a.grid);
  for (std::size_t n = 0; n < a.size(); ++n) out.v[n] = a.v[n] - b.v[n];
  return out;
}

template <typename T, typename S>
Field<T> scale_field(const Field<T>& a, S alpha) {
  Field<T> out(a.grid);
  for (std::size_t n = 0; n < a.size(); ++n) out.v[n] = alpha * a.v[n];
  return out;
}

// Full simulation state: complex roll amplitude A, real director angle phi.
struct SimState {
  ComplexField A;
  RealField phi;
  double t = 0.0;

  SimState() = default;
  SimState(const Grid2D& g) : A(g), phi(g), t(0.0) {}

  const Grid2D& grid() const { return A.grid; }

  void validate() const {
    if (!(A.grid == phi.grid)) throw std::invalid_argument("SimState: A and phi live on different grids");
    if (!(t >= 0.0)) throw std::invalid_argument("SimState: negative time");
  }
};

}  // namespace chevron
