#pragma once

// Sampling and enumeration oracles used to check the closed-form bounds.
// Every estimator is deterministic for a fixed seed: trial i always draws from
// derive_stream(seed, i), whatever the worker count.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "conngraph/graph.hpp"
#include "conngraph/spectral.hpp"

namespace conngraph {

inline constexpr std::size_t kDefaultEnumerationCap = 24;
inline constexpr double kDefaultConfidence = 0.95;

struct MonteCarloOptions {
    /// 0 means std::thread::hardware_concurrency().
    std::size_t workers = 0;
    double confidence = kDefaultConfidence;
};

struct Interval {
    double low = 0.0;
    double high = 1.0;
};

/// Wilson score interval for `successes` out of `trials` at two-sided
/// `confidence` in (0, 1).
Interval wilson_interval(std::uint64_t successes, std::uint64_t trials, double confidence);

struct EmpiricalEstimate {
    std::uint64_t trials = 0;
    std::uint64_t successes = 0;
    double point = 0.0;
    double ci_low = 0.0;
    double ci_high = 1.0;
    double confidence = kDefaultConfidence;

    double half_width() const noexcept { return 0.5 * (ci_high - ci_low); }
};

EmpiricalEstimate make_estimate(std::uint64_t successes, std::uint64_t trials, double confidence);

struct ExactProbability {
    double value = 0.0;
    std::uint64_t connected_subsets = 0;
    std::uint64_t total_subsets = 0;
    /// connected_by_size[k]: connected edge subsets with exactly k edges.
    std::vector<std::uint64_t> connected_by_size;
};

/// Sum over connected edge subsets E' of p^|E'| (1-p)^(m-|E'|).
/// Throws TooManyEdges when m exceeds `edge_cap`.
ExactProbability exact_connectivity(const UnderlyingGraph& parent, double p,
                                    std::size_t edge_cap = kDefaultEnumerationCap,
                                    const MonteCarloOptions& options = {});

/// Fraction of unions of T draws from G(parent, p) that are connected.
EmpiricalEstimate empirical_connectivity(const UnderlyingGraph& parent, double p, std::size_t T,
                                         std::uint64_t trials, std::uint64_t seed,
                                         const MonteCarloOptions& options = {});

struct Lambda2Moments {
    std::uint64_t trials = 0;
    double mean = 0.0;
    double mean_square = 0.0;
    double se_mean = 0.0;
    double se_mean_square = 0.0;
};

Lambda2Moments empirical_lambda2_moments(const UnderlyingGraph& parent, double p, std::uint64_t trials,
                                         std::uint64_t seed, const MonteCarloOptions& options = {});

struct SampleMoments {
    std::uint64_t trials = 0;
    double mean = 0.0;
    /// Unbiased sample variance.
    double variance = 0.0;
    double se_mean = 0.0;
};

/// Moments of l over independent (graph, index) draws.
SampleMoments empirical_ell_moments(const UnderlyingGraph& parent, double p, std::uint64_t trials,
                                    std::uint64_t seed, const MonteCarloOptions& options = {});

/// Moments of l_{1:N} over independent trials.
SampleMoments empirical_first_order_moments(const UnderlyingGraph& parent, double p, std::size_t N,
                                            std::uint64_t trials, std::uint64_t seed,
                                            OrderStatisticMode mode = OrderStatisticMode::SharedGraph,
                                            const MonteCarloOptions& options = {});

struct CoupledEstimates {
    EmpiricalEstimate low;
    EmpiricalEstimate high;
    /// Per-trial connectivity indicators under the common random numbers.
    std::vector<std::uint8_t> low_connected;
    std::vector<std::uint8_t> high_connected;
    /// Trials where the p_low graph was connected but the p_high graph was not.
    std::uint64_t dominance_violations = 0;
};

/// Both edge probabilities share one uniform per edge per trial (edge present
/// iff u < p), so the p_high graph always contains the p_low graph.
CoupledEstimates coupled_monotonicity_check(const UnderlyingGraph& parent, double p_low, double p_high,
                                            std::uint64_t trials, std::uint64_t seed,
                                            const MonteCarloOptions& options = {});

/// Pairwise (cascade) summation; the result depends only on the input order.
double pairwise_sum(std::span<const double> values);

}  // namespace conngraph
