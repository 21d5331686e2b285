#include "conngraph/montecarlo.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>
#include <thread>

#include <boost/math/distributions/normal.hpp>

#include "conngraph/errors.hpp"
#include "conngraph/random.hpp"

namespace conngraph {
namespace {

void check_probability(double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw InvalidParameter("edge probability must lie in [0, 1], got " + std::to_string(p));
}

void check_trials(std::uint64_t trials) {
    if (trials == 0) throw InvalidParameter("trials must be at least 1");
}

std::size_t worker_count(const MonteCarloOptions& options, std::uint64_t work) {
    std::size_t w = options.workers;
    if (w == 0) w = std::max(1u, std::thread::hardware_concurrency());
    return static_cast<std::size_t>(std::clamp<std::uint64_t>(work, 1, w));
}

// Calls body(begin, end) over a contiguous partition of [0, count).
template <class Body>
void parallel_blocks(std::uint64_t count, std::size_t workers, Body&& body) {
    if (workers <= 1) {
        body(std::uint64_t{0}, count);
        return;
    }
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    const std::uint64_t chunk = (count + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
        const std::uint64_t begin = std::min<std::uint64_t>(count, w * chunk);
        const std::uint64_t end = std::min<std::uint64_t>(count, begin + chunk);
        if (begin == end) break;
        pool.emplace_back([&body, begin, end] { body(begin, end); });
    }
}

// values[i] = trial(i, derive_stream(seed, i)).
template <class T, class Trial>
std::vector<T> run_trials(std::uint64_t trials, std::uint64_t seed, const MonteCarloOptions& options, Trial&& trial) {
    std::vector<T> values(trials);
    parallel_blocks(trials, worker_count(options, trials), [&](std::uint64_t begin, std::uint64_t end) {
        for (std::uint64_t i = begin; i < end; ++i) {
            RandomStream rng = derive_stream(seed, i);
            values[i] = trial(rng);
        }
    });
    return values;
}

SampleMoments moments_of(std::span<const double> xs) {
    SampleMoments out;
    out.trials = xs.size();
    out.mean = pairwise_sum(xs) / static_cast<double>(xs.size());
    if (xs.size() > 1) {
        std::vector<double> dev(xs.size());
        std::transform(xs.begin(), xs.end(), dev.begin(), [&](double x) { return (x - out.mean) * (x - out.mean); });
        out.variance = pairwise_sum(dev) / static_cast<double>(xs.size() - 1);
        out.se_mean = std::sqrt(out.variance / static_cast<double>(xs.size()));
    }
    return out;
}

std::uint64_t count_ones(std::span<const std::uint8_t> flags) {
    return static_cast<std::uint64_t>(std::count(flags.begin(), flags.end(), std::uint8_t{1}));
}

}  // namespace

double pairwise_sum(std::span<const double> values) {
    if (values.size() <= 8) {
        double s = 0.0;
        for (double v : values) s += v;
        return s;
    }
    const std::size_t half = values.size() / 2;
    return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

Interval wilson_interval(std::uint64_t successes, std::uint64_t trials, double confidence) {
    check_trials(trials);
    if (successes > trials) throw InvalidParameter("successes exceed trials");
    if (!(confidence > 0.0 && confidence < 1.0)) throw InvalidParameter("confidence must lie in (0, 1)");

    const boost::math::normal_distribution<double> normal;
    const double z = boost::math::quantile(normal, 0.5 + 0.5 * confidence);
    const double n = static_cast<double>(trials);
    const double phat = static_cast<double>(successes) / n;
    const double z2n = z * z / n;
    const double center = (phat + 0.5 * z2n) / (1.0 + z2n);
    const double half = z / (1.0 + z2n) * std::sqrt(phat * (1.0 - phat) / n + z * z / (4.0 * n * n));
    Interval out{std::max(0.0, center - half), std::min(1.0, center + half)};
    out.low = std::min(out.low, phat);
    out.high = std::max(out.high, phat);
    return out;
}

EmpiricalEstimate make_estimate(std::uint64_t successes, std::uint64_t trials, double confidence) {
    const Interval ci = wilson_interval(successes, trials, confidence);
    return {trials, successes, static_cast<double>(successes) / static_cast<double>(trials), ci.low, ci.high,
            confidence};
}

ExactProbability exact_connectivity(const UnderlyingGraph& parent, double p, std::size_t edge_cap,
                                    const MonteCarloOptions& options) {
    check_probability(p);
    const std::size_t m = parent.m();
    if (m > edge_cap || m >= 63) {
        throw TooManyEdges("exact enumeration over " + std::to_string(m) + " edges exceeds the cap of " +
                           std::to_string(edge_cap));
    }
    const std::size_t n = parent.n();
    const auto edges = parent.edges();
    const std::uint64_t total = std::uint64_t{1} << m;

    const std::size_t workers = worker_count(options, total >> 12);
    std::vector<std::vector<std::uint64_t>> partial(workers, std::vector<std::uint64_t>(m + 1, 0));
    const std::uint64_t chunk = (total + workers - 1) / workers;
    parallel_blocks(total, workers, [&](std::uint64_t begin, std::uint64_t end) {
        std::vector<std::uint64_t>& counts = partial[begin / chunk];
        DisjointSet ds(n);
        for (std::uint64_t mask = begin; mask < end; ++mask) {
            const auto k = static_cast<std::size_t>(std::popcount(mask));
            if (k + 1 < n) continue;  // fewer than n-1 edges cannot span
            ds.reset(n);
            for (std::uint64_t bits = mask; bits != 0 && ds.components() > 1; bits &= bits - 1) {
                const Edge& e = edges[static_cast<std::size_t>(std::countr_zero(bits))];
                ds.unite(e.u, e.v);
            }
            if (ds.components() <= 1) ++counts[k];
        }
    });

    ExactProbability out;
    out.total_subsets = total;
    out.connected_by_size.assign(m + 1, 0);
    for (const auto& counts : partial)
        for (std::size_t k = 0; k <= m; ++k) out.connected_by_size[k] += counts[k];

    const double q = 1.0 - p;
    double value = 0.0;
    for (std::size_t k = 0; k <= m; ++k) {
        out.connected_subsets += out.connected_by_size[k];
        if (out.connected_by_size[k] == 0) continue;
        value += static_cast<double>(out.connected_by_size[k]) * std::pow(p, static_cast<double>(k)) *
                 std::pow(q, static_cast<double>(m - k));
    }
    out.value = std::clamp(value, 0.0, 1.0);
    return out;
}

EmpiricalEstimate empirical_connectivity(const UnderlyingGraph& parent, double p, std::size_t T,
                                         std::uint64_t trials, std::uint64_t seed,
                                         const MonteCarloOptions& options) {
    check_probability(p);
    check_trials(trials);
    if (T == 0) throw InvalidParameter("union horizon T must be at least 1");
    const auto hits = run_trials<std::uint8_t>(trials, seed, options, [&](RandomStream& rng) {
        return static_cast<std::uint8_t>(is_connected(sample_union(parent, p, T, rng)) ? 1 : 0);
    });
    return make_estimate(count_ones(hits), trials, options.confidence);
}

Lambda2Moments empirical_lambda2_moments(const UnderlyingGraph& parent, double p, std::uint64_t trials,
                                         std::uint64_t seed, const MonteCarloOptions& options) {
    check_probability(p);
    check_trials(trials);
    if (parent.n() < 2) throw InvalidParameter("lambda_2 needs at least two vertices");
    const auto values = run_trials<double>(trials, seed, options, [&](RandomStream& rng) {
        return algebraic_connectivity(sample_graph(parent, p, rng));
    });
    std::vector<double> squares(values.size());
    std::transform(values.begin(), values.end(), squares.begin(), [](double x) { return x * x; });

    const SampleMoments first = moments_of(values);
    const SampleMoments second = moments_of(squares);
    return {trials, first.mean, second.mean, first.se_mean, second.se_mean};
}

SampleMoments empirical_ell_moments(const UnderlyingGraph& parent, double p, std::uint64_t trials,
                                    std::uint64_t seed, const MonteCarloOptions& options) {
    check_probability(p);
    check_trials(trials);
    const auto values = run_trials<double>(trials, seed, options,
                                           [&](RandomStream& rng) { return sample_ell(sample_graph(parent, p, rng), rng); });
    return moments_of(values);
}

SampleMoments empirical_first_order_moments(const UnderlyingGraph& parent, double p, std::size_t N,
                                            std::uint64_t trials, std::uint64_t seed, OrderStatisticMode mode,
                                            const MonteCarloOptions& options) {
    check_trials(trials);
    const auto values = run_trials<double>(trials, seed, options, [&](RandomStream& rng) {
        return sample_ell_first_order_statistic(parent, p, N, rng, mode);
    });
    return moments_of(values);
}

CoupledEstimates coupled_monotonicity_check(const UnderlyingGraph& parent, double p_low, double p_high,
                                            std::uint64_t trials, std::uint64_t seed,
                                            const MonteCarloOptions& options) {
    check_probability(p_low);
    check_probability(p_high);
    check_trials(trials);
    if (p_low > p_high) throw InvalidParameter("coupled check needs p_low <= p_high");

    // Bit 0: connected at p_low, bit 1: connected at p_high.
    const auto outcomes = run_trials<std::uint8_t>(trials, seed, options, [&](RandomStream& rng) {
        std::vector<std::uint8_t> low(parent.m());
        std::vector<std::uint8_t> high(parent.m());
        for (std::size_t k = 0; k < parent.m(); ++k) {
            const double u = uniform01(rng);
            low[k] = u < p_low ? 1 : 0;
            high[k] = u < p_high ? 1 : 0;
        }
        const bool lo = is_connected(SampledGraph(parent, std::move(low)));
        const bool hi = is_connected(SampledGraph(parent, std::move(high)));
        return static_cast<std::uint8_t>((lo ? 1 : 0) | (hi ? 2 : 0));
    });

    CoupledEstimates out;
    out.low_connected.resize(trials);
    out.high_connected.resize(trials);
    for (std::uint64_t i = 0; i < trials; ++i) {
        out.low_connected[i] = outcomes[i] & 1;
        out.high_connected[i] = (outcomes[i] >> 1) & 1;
        if (out.low_connected[i] > out.high_connected[i]) ++out.dominance_violations;
    }
    out.low = make_estimate(count_ones(out.low_connected), trials, options.confidence);
    out.high = make_estimate(count_ones(out.high_connected), trials, options.confidence);
    return out;
}

}  // namespace conngraph
