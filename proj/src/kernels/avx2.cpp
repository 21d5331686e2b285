// Built with -mavx2 (and without -mfma) so the vector body rounds exactly like
// the scalar loop.

#include <immintrin.h>

#include <algorithm>

#include "kernels_internal.hpp"

namespace conngraph::kernels {
namespace {

void rotate_rows_avx2(std::span<double> x, std::span<double> y, double c, double s) {
    const std::size_t n = std::min(x.size(), y.size());
    const __m256d vc = _mm256_set1_pd(c);
    const __m256d vs = _mm256_set1_pd(s);
    std::size_t k = 0;
    for (; k + 4 <= n; k += 4) {
        const __m256d xk = _mm256_loadu_pd(x.data() + k);
        const __m256d yk = _mm256_loadu_pd(y.data() + k);
        const __m256d nx = _mm256_sub_pd(_mm256_mul_pd(vc, xk), _mm256_mul_pd(vs, yk));
        const __m256d ny = _mm256_add_pd(_mm256_mul_pd(vs, xk), _mm256_mul_pd(vc, yk));
        _mm256_storeu_pd(x.data() + k, nx);
        _mm256_storeu_pd(y.data() + k, ny);
    }
    detail::rotate_rows_tail(x.subspan(k, n - k), y.subspan(k, n - k), c, s);
}

void bound_ratios_avx2(std::span<const double> r, std::span<const double> sqrt_nm1, const BoundTerms& t,
                       std::span<double> out) {
    const std::size_t n = out.size();
    const __m256d two_mp = _mm256_set1_pd(t.two_mp);
    const __m256d s = _mm256_set1_pd(t.s);
    const __m256d scale = _mm256_set1_pd(t.denom_scale);
    const __m256d zero = _mm256_setzero_pd();
    const __m256d one = _mm256_set1_pd(1.0);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d ri = _mm256_loadu_pd(r.data() + i);
        const __m256d qi = _mm256_loadu_pd(sqrt_nm1.data() + i);
        __m256d num = _mm256_sub_pd(_mm256_mul_pd(two_mp, ri), _mm256_mul_pd(s, qi));
        // max(num, 0) with the scalar's tie/NaN behaviour: keep num only when num > 0.
        num = _mm256_and_pd(num, _mm256_cmp_pd(num, zero, _CMP_GT_OQ));
        const __m256d den = _mm256_mul_pd(_mm256_mul_pd(scale, ri), ri);
        const __m256d v = _mm256_div_pd(_mm256_mul_pd(num, num), den);
        const __m256d clamped = _mm256_blendv_pd(one, v, _mm256_cmp_pd(v, one, _CMP_LT_OQ));
        _mm256_storeu_pd(out.data() + i, clamped);
    }
    detail::bound_ratios_tail(r.subspan(i), sqrt_nm1.subspan(i), t, out.subspan(i));
}

}  // namespace

namespace detail {
const KernelSet& avx2_set() noexcept {
    static constexpr KernelSet set{"avx2", &rotate_rows_avx2, &bound_ratios_avx2};
    return set;
}
}  // namespace detail

}  // namespace conngraph::kernels
