#pragma once

// Data-parallel inner loops with a scalar reference implementation and an
// AVX2 variant picked at runtime. Every variant must produce bit-identical
// results to the scalar path: no reassociation, no fused multiply-add.

#include <cstddef>
#include <span>
#include <string_view>

namespace conngraph::kernels {

/// Per-(graph, p) constants of the connectivity ratio.
///   value(N) = min(1, max(0, two_mp * R - s * sqrt(N-1))^2 / ((denom_scale * R) * R))
/// with denom_scale = (n-1) * (4mp - 2mp^2 + p^2 sum d_i^2).
struct BoundTerms {
    double two_mp = 0.0;
    double s = 0.0;
    double denom_scale = 0.0;
};

/// Plane rotation of two rows: x' = c*x - s*y, y' = s*x + c*y.
using RotateRowsFn = void (*)(std::span<double> x, std::span<double> y, double c, double s);

/// out[i] = value at the N whose R(N, n) is r[i] and sqrt(N-1) is sqrt_nm1[i].
using BoundRatiosFn = void (*)(std::span<const double> r, std::span<const double> sqrt_nm1,
                               const BoundTerms& terms, std::span<double> out);

struct KernelSet {
    std::string_view name;
    RotateRowsFn rotate_rows;
    BoundRatiosFn bound_ratios;
};

const KernelSet& scalar() noexcept;

/// nullptr when the AVX2 variant was not compiled in or the CPU lacks AVX2.
const KernelSet* avx2() noexcept;

/// Kernel set used by the library. Chosen once: the best supported variant,
/// unless the CONNGRAPH_SIMD environment variable is "scalar".
const KernelSet& active() noexcept;

}  // namespace conngraph::kernels
