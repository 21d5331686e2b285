#include <cstdlib>
#include <string_view>

#include "kernels_internal.hpp"

namespace conngraph::kernels {

const KernelSet* avx2() noexcept {
#if defined(CONNGRAPH_HAVE_AVX2)
    static const bool supported = __builtin_cpu_supports("avx2");
    return supported ? &detail::avx2_set() : nullptr;
#else
    return nullptr;
#endif
}

const KernelSet& active() noexcept {
    static const KernelSet& chosen = [] () -> const KernelSet& {
        const char* env = std::getenv("CONNGRAPH_SIMD");
        if (env != nullptr && std::string_view(env) == "scalar") return scalar();
        if (const KernelSet* v = avx2()) return *v;
        return scalar();
    }();
    return chosen;
}

}  // namespace conngraph::kernels
