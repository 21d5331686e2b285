#pragma once

#include "conngraph/kernels.hpp"

namespace conngraph::kernels::detail {

// Scalar loops reused for the remainder after the vector body.
void bound_ratios_tail(std::span<const double> r, std::span<const double> sqrt_nm1, const BoundTerms& t,
                       std::span<double> out);
void rotate_rows_tail(std::span<double> x, std::span<double> y, double c, double s);

#if defined(CONNGRAPH_HAVE_AVX2)
const KernelSet& avx2_set() noexcept;
#endif

}  // namespace conngraph::kernels::detail
