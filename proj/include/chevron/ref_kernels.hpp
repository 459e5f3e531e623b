#pragma once

#include "chevron/field.hpp"
#include "chevron/params.hpp"

// Serial reference kernels. These mirror the OpenMP production kernels
// statement for statement and are kept for correctness tests and for the
// benchmark target; results must match the parallel versions bit for bit.

namespace chevron {

struct RhsPair;

namespace ref {

RealField laplacian(const RealField& f);
ComplexField laplacian(const ComplexField& f);
RealField anisotropic_laplacian(const RealField& f, double D1, double D2);
RealField d_dy_real(const RealField& f);
ComplexField d_dy_complex(const ComplexField& f);

double l2_norm_sq(const RealField& f);
double l2_norm_sq(const ComplexField& f);
double l4_norm_4(const ComplexField& f);
double inner_product(const RealField& f, const RealField& g);
double grad_norm_sq(const RealField& f);
double grad_norm_sq(const ComplexField& f);

RhsPair rhs(const SimState& s, const ChevronParams& p);

}  // namespace ref
}  // namespace chevron
