#include "conngraph/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "conngraph/errors.hpp"
#include "conngraph/kernels.hpp"

namespace conngraph {
namespace {

double off_diagonal_norm(const Matrix& a) {
    double sum = 0.0;
    const std::size_t n = a.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j) sum += a(i, j) * a(i, j);
    return std::sqrt(sum);
}

double frobenius_norm(const Matrix& a) {
    double sum = 0.0;
    for (double v : a.values()) sum += v * v;
    return std::sqrt(sum);
}

// Zeroes a(p, q) with one two-sided rotation. Rows p and q are rotated by the
// kernel, then mirrored into columns p and q.
void jacobi_rotate(Matrix& a, std::size_t p, std::size_t q, const kernels::KernelSet& k) {
    const double apq = a(p, q);
    const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
    double t;
    if (std::abs(theta) > 1e150) {
        t = 0.5 / theta;
    } else {
        t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        if (theta < 0.0) t = -t;
    }
    const double c = 1.0 / std::sqrt(t * t + 1.0);
    const double s = t * c;
    const double app = a(p, p) - t * apq;
    const double aqq = a(q, q) + t * apq;

    k.rotate_rows(a.row(p), a.row(q), c, s);
    const std::size_t n = a.size();
    for (std::size_t r = 0; r < n; ++r) {
        if (r == p || r == q) continue;
        a(r, p) = a(p, r);
        a(r, q) = a(q, r);
    }
    a(p, p) = app;
    a(q, q) = aqq;
    a(p, q) = 0.0;
    a(q, p) = 0.0;
}

}  // namespace

Spectrum eigenvalues_symmetric(const Matrix& input, const JacobiOptions& options) {
    const std::size_t n = input.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (!(std::abs(input(i, j) - input(j, i)) <= options.symmetry_tolerance)) {
                throw NotSymmetric("matrix is not symmetric at (" + std::to_string(i) + ", " + std::to_string(j) + ")");
            }
        }
    }

    Matrix a = input;
    // Work on the exactly symmetrized matrix.
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) a(i, j) = a(j, i) = 0.5 * (a(i, j) + a(j, i));

    const double target = options.relative_tolerance * std::max(1.0, frobenius_norm(input));
    const kernels::KernelSet& k = kernels::active();

    Spectrum out;
    bool converged = off_diagonal_norm(a) < target;
    while (!converged && out.sweeps < options.max_sweeps) {
        ++out.sweeps;
        for (std::size_t p = 0; p + 1 < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q)
                if (a(p, q) != 0.0) jacobi_rotate(a, p, q, k);
        converged = off_diagonal_norm(a) < target;
    }
    if (!converged) {
        throw NoConvergence("Jacobi iteration did not converge in " + std::to_string(options.max_sweeps) + " sweeps");
    }

    out.eigenvalues.resize(n);
    for (std::size_t i = 0; i < n; ++i) out.eigenvalues[i] = a(i, i);
    std::sort(out.eigenvalues.begin(), out.eigenvalues.end());
    return out;
}

double algebraic_connectivity(const SampledGraph& g) {
    if (g.n() < 2) throw InvalidParameter("algebraic connectivity needs at least two vertices");
    return eigenvalues_symmetric(laplacian(g)).lambda(2);
}

double sample_ell(const Spectrum& spectrum, RandomStream& rng) {
    const std::size_t n = spectrum.eigenvalues.size();
    if (n < 2) throw InvalidParameter("sampling l needs at least two vertices");
    return spectrum.eigenvalues[1 + uniform_index(rng, n - 1)];
}

double sample_ell(const SampledGraph& g, RandomStream& rng) {
    return sample_ell(eigenvalues_symmetric(laplacian(g)), rng);
}

double sample_ell_first_order_statistic(const UnderlyingGraph& parent, double p, std::size_t N, RandomStream& rng,
                                        OrderStatisticMode mode) {
    if (N == 0) throw InvalidParameter("order statistic needs N >= 1");
    if (parent.n() < 2) throw InvalidParameter("sampling l needs at least two vertices");

    double best = std::numeric_limits<double>::infinity();
    if (mode == OrderStatisticMode::SharedGraph) {
        const Spectrum spectrum = eigenvalues_symmetric(laplacian(sample_graph(parent, p, rng)));
        for (std::size_t k = 0; k < N; ++k) best = std::min(best, sample_ell(spectrum, rng));
    } else {
        for (std::size_t k = 0; k < N; ++k) best = std::min(best, sample_ell(sample_graph(parent, p, rng), rng));
    }
    return best;
}

}  // namespace conngraph
