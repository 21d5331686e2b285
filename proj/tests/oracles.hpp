#pragma once

// Test-only reference implementations of the closed-form quantities, written
// directly from the displayed formulas (plain pow, three-term radicand). They
// share no code with src/bounds.cpp.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>

namespace oracle {

struct Model {
    double n, m, d2, p;
};

inline double s_squared(const Model& g) {
    return 2 * g.m * g.p * (g.n - 1) * (2 - g.p) + g.p * g.p * (g.n - 1) * g.d2 - 4 * g.m * g.m * g.p * g.p;
}

// The variance as first expanded, before the S substitution.
inline double sigma_squared_expanded(const Model& g) {
    return g.p / ((g.n - 1) * (g.n - 1)) * ((g.n - 1) * (2 * g.m * (2 - g.p) + g.p * g.d2) - 4 * g.m * g.m * g.p);
}

inline double r_factor(double N, double n) { return 1.0 - std::pow((n - 2) / (n - 1), N - 1); }

inline double ratio_at(const Model& g, double N) {
    const double r = r_factor(N, g.n);
    const double s = std::sqrt(std::max(0.0, s_squared(g)));
    const double num = std::max(0.0, 2 * g.m * g.p * r - s * std::sqrt(N - 1));
    return num * num / ((g.n - 1) * r * r * (4 * g.m * g.p - 2 * g.m * g.p * g.p + g.p * g.p * g.d2));
}

// Specialized complete-graph ratio.
inline double complete_ratio_at(double n, double p, double N) {
    const double r = r_factor(N, n);
    const double num = std::max(0.0, std::sqrt(n * (n - 1) * p) * r - std::sqrt(2 * (n - 1) * (1 - p) * (N - 1)));
    return num * num / ((n - 1) * r * r * (2 - 2 * p + n * p));
}

struct Max {
    double value = 0.0;
    std::size_t N = 2;
};

// Brute-force maximum over N in [2, n_hi].
template <class F>
Max maximize(F&& f, std::size_t n_hi) {
    Max best{-1.0, 2};
    for (std::size_t N = 2; N <= n_hi; ++N) {
        const double v = f(static_cast<double>(N));
        if (v > best.value) best = {v, N};
    }
    best.value = std::min(best.value, 1.0);
    return best;
}

inline Model complete_model(std::size_t n, double p) {
    const double nd = static_cast<double>(n);
    return {nd, nd * (nd - 1) / 2, nd * (nd - 1) * (nd - 1), p};
}

inline Model complete_minus_cycle_model(std::size_t n, double p) {
    const double nd = static_cast<double>(n);
    return {nd, nd * (nd - 3) / 2, nd * (nd - 3) * (nd - 3), p};
}

}  // namespace oracle
