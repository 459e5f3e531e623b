#pragma once

#include <complex>

#include "chevron/field.hpp"

namespace chevron {

// Discrete L2/L4 functionals over interior nodes, weight dx*dy.
// Reductions accumulate one partial sum per grid row and then combine the
// rows in index order, so results are identical for any thread count.
double l2_norm_sq(const RealField& f);
double l2_norm_sq(const ComplexField& f);

double l4_norm_4(const RealField& f);
double l4_norm_4(const ComplexField& f);

double inner_product(const RealField& f, const RealField& g);
std::complex<double> inner_product(const ComplexField& f, const ComplexField& g);

double max_abs(const RealField& f);
double max_abs(const ComplexField& f);

bool all_finite(const RealField& f);
bool all_finite(const ComplexField& f);

}  // namespace chevron
