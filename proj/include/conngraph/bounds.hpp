#pragma once

// Closed-form lower bounds on the probability that a graph drawn from
// G(G, p), or a union of T such draws, is connected.
//
// Notation used below: n vertices, m edges, D = sum of squared degrees of the
// template, q = 1 - p. The spectral statistic l (a uniformly chosen nontrivial
// Laplacian eigenvalue) has mean mu = 2mp/(n-1) and variance S^2/(n-1)^2 with
//   S^2 = 2mp(n-1)(2-p) + p^2(n-1)D - 4m^2p^2.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "conngraph/graph.hpp"

namespace conngraph {

inline constexpr std::size_t kDefaultNCap = 1'000'000;
inline constexpr std::size_t kDefaultTMax = 100'000;

/// The template quantities the bounds depend on.
struct GraphSummary {
    std::size_t n = 0;
    std::uint64_t m = 0;
    std::uint64_t sum_degree_squares = 0;

    static GraphSummary of(const UnderlyingGraph& g);
};

/// (graph, p) with p in (0, 1) and n >= 3. Keeps 1 - p alongside p so unions
/// can supply (1 - p)^T without cancellation.
class ModelParams {
public:
    ModelParams(const UnderlyingGraph& graph, double p);
    ModelParams(const GraphSummary& graph, double p);

    /// Parameters of the union of T draws: p_hat = 1 - (1 - p)^T. Valid for
    /// p in (0, 1); when (1 - p)^T underflows the limit p_hat = 1 is used.
    static ModelParams for_union(const GraphSummary& graph, double p, std::size_t T);
    static ModelParams for_union(const UnderlyingGraph& graph, double p, std::size_t T);

    /// Union parameters from a precomputed pair p_hat in (0, 1], q_hat = 1 - p_hat.
    static ModelParams from_union_probability(const GraphSummary& graph, double p_hat, double q_hat);

    const GraphSummary& graph() const noexcept { return graph_; }
    std::size_t n() const noexcept { return graph_.n; }
    double m() const noexcept { return static_cast<double>(graph_.m); }
    double sum_degree_squares() const noexcept { return static_cast<double>(graph_.sum_degree_squares); }
    double p() const noexcept { return p_; }
    /// 1 - p, computed without cancellation for unions.
    double complement() const noexcept { return q_; }

private:
    ModelParams(const GraphSummary& graph, double p, double q, bool allow_saturated);

    GraphSummary graph_;
    double p_ = 0.0;
    double q_ = 1.0;
};

struct BoundOptions {
    /// Upper limit on the N range scanned when S -> 0.
    std::size_t n_cap = kDefaultNCap;
};

struct BoundResult {
    double probability_lower_bound = 0.0;
    std::size_t maximizing_N = 2;
    std::size_t n_search_max = 2;
    double numerator = 0.0;
    double denominator = 0.0;
    double s_value = 0.0;
    double mu = 0.0;
    double sigma_squared = 0.0;
};

struct TStarTracePoint {
    std::size_t T = 0;
    double p_hat = 0.0;
    double bound = 0.0;
    std::size_t maximizing_N = 2;
};

struct TStarResult {
    std::size_t t_star = 0;
    double epsilon = 0.0;
    std::vector<TStarTracePoint> trace;

    /// The bound reached at t_star.
    double bound() const { return trace.back().bound; }
};

/// R(N, n) = 1 - ((n-2)/(n-1))^(N-1), evaluated in log space.
double r_factor(std::size_t N, std::size_t n);

double ell_mean(const ModelParams& params);

/// S^2, clamped to 0 for tiny negative rounding; NegativeRadicand below -1e-9.
double s_squared(const ModelParams& params);
double s_value(const ModelParams& params);
double ell_variance(const ModelParams& params);

/// max{0, (2mp - S sqrt(N-1)) / (n-1)}: lower bound on E[l_{1:N}].
double ell_first_order_lower(const ModelParams& params, std::size_t N);

/// Lower bound on E[lambda_2]. N >= 2.
double lambda2_mean_lower(const ModelParams& params, std::size_t N);

/// (4mp - 2mp^2 + p^2 D) / (n-1): upper bound on E[lambda_2^2].
double lambda2_sq_mean_upper(const ModelParams& params);

/// Paley-Zygmund ratio at one N >= 2, clamped to [0, 1].
double connectivity_bound_at_N(const ModelParams& params, std::size_t N);

/// Largest N that can give a positive numerator: floor((S^2 + 4m^2p^2) / S^2),
/// never below 2, capped at n_cap.
std::size_t n_search_max(const ModelParams& params, std::size_t n_cap = kDefaultNCap);

/// Maximum of connectivity_bound_at_N over N in [2, n_search_max]. The
/// smallest maximizing N is reported.
BoundResult connectivity_bound(const ModelParams& params, const BoundOptions& options = {});

/// 1 - (1 - p)^T.
double union_edge_probability(double p, std::size_t T);
/// (1 - p)^T.
double union_edge_absence(double p, std::size_t T);

/// Smallest T in [1, t_max] whose union bound reaches 1 - epsilon, by linear
/// scan. Throws TStarNotFound with the best bound seen.
TStarResult t_star(const UnderlyingGraph& graph, double p, double epsilon, std::size_t t_max = kDefaultTMax,
                   const BoundOptions& options = {});

/// The bound specialized to K_n: d_i = n-1, m = n(n-1)/2, S^2 = 2n(n-1)^2 p(1-p).
BoundResult connectivity_bound_complete(std::size_t n, double p, const BoundOptions& options = {});

TStarResult t_star_complete(std::size_t n, double p, double epsilon, std::size_t t_max = kDefaultTMax,
                            const BoundOptions& options = {});

}  // namespace conngraph
