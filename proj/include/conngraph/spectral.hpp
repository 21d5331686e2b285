#pragma once

#include <cstddef>
#include <vector>

#include "conngraph/graph.hpp"
#include "conngraph/matrix.hpp"
#include "conngraph/random.hpp"

namespace conngraph {

/// Eigenvalues sorted ascending; eigenvalues[k] is lambda_{k+1}.
struct Spectrum {
    std::vector<double> eigenvalues;
    int sweeps = 0;

    /// 1-based, matching lambda_1 <= lambda_2 <= ... <= lambda_n.
    double lambda(std::size_t k) const { return eigenvalues.at(k - 1); }
};

struct JacobiOptions {
    /// Stop when the off-diagonal Frobenius norm drops below
    /// relative_tolerance * max(1, ||A||_F).
    double relative_tolerance = 1e-10;
    int max_sweeps = 100;
    double symmetry_tolerance = 1e-12;
};

/// Cyclic Jacobi eigenvalue solver for dense symmetric matrices.
/// Throws NotSymmetric or NoConvergence.
Spectrum eigenvalues_symmetric(const Matrix& a, const JacobiOptions& options = {});

/// Zero threshold used to classify lambda_2: 1e-8 * n.
inline double zero_eigenvalue_threshold(std::size_t n) { return 1e-8 * static_cast<double>(n); }

/// lambda_2 of the sample's Laplacian. Requires n >= 2.
double algebraic_connectivity(const SampledGraph& g);

/// The statistic l: a uniformly chosen nontrivial eigenvalue lambda_i, i in {2..n}.
double sample_ell(const Spectrum& spectrum, RandomStream& rng);
double sample_ell(const SampledGraph& g, RandomStream& rng);

/// How the N samples behind l_{1:N} relate to graph realizations.
enum class OrderStatisticMode {
    SharedGraph,        ///< one graph, N index draws from its spectrum
    IndependentGraphs,  ///< a fresh graph for each of the N draws
};

/// l_{1:N}: the minimum of N samples of l over graphs from G(parent, p).
double sample_ell_first_order_statistic(const UnderlyingGraph& parent, double p, std::size_t N, RandomStream& rng,
                                        OrderStatisticMode mode = OrderStatisticMode::SharedGraph);

}  // namespace conngraph
