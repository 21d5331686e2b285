#include <algorithm>

#include "conngraph/kernels.hpp"
#include "kernels_internal.hpp"

namespace conngraph::kernels {
namespace {

void rotate_rows_scalar(std::span<double> x, std::span<double> y, double c, double s) {
    const std::size_t n = std::min(x.size(), y.size());
    for (std::size_t k = 0; k < n; ++k) {
        const double xk = x[k];
        const double yk = y[k];
        x[k] = c * xk - s * yk;
        y[k] = s * xk + c * yk;
    }
}

void bound_ratios_scalar(std::span<const double> r, std::span<const double> sqrt_nm1, const BoundTerms& t,
                         std::span<double> out) {
    const std::size_t n = out.size();
    for (std::size_t i = 0; i < n; ++i) {
        double num = t.two_mp * r[i] - t.s * sqrt_nm1[i];
        num = num > 0.0 ? num : 0.0;
        const double v = (num * num) / ((t.denom_scale * r[i]) * r[i]);
        out[i] = v < 1.0 ? v : 1.0;
    }
}

}  // namespace

namespace detail {
void bound_ratios_tail(std::span<const double> r, std::span<const double> sqrt_nm1, const BoundTerms& t,
                       std::span<double> out) {
    bound_ratios_scalar(r, sqrt_nm1, t, out);
}
void rotate_rows_tail(std::span<double> x, std::span<double> y, double c, double s) {
    rotate_rows_scalar(x, y, c, s);
}
}  // namespace detail

const KernelSet& scalar() noexcept {
    static constexpr KernelSet set{"scalar", &rotate_rows_scalar, &bound_ratios_scalar};
    return set;
}

}  // namespace conngraph::kernels
