#include "conngraph/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>

#include "conngraph/errors.hpp"
#include "conngraph/kernels.hpp"

namespace conngraph {
namespace {

void check_open_probability(double p, const char* what) {
    if (!(p > 0.0 && p < 1.0)) throw InvalidParameter(std::string(what) + " must lie in (0, 1), got " + std::to_string(p));
}

void check_vertex_count(std::size_t n) {
    if (n < 3) throw InvalidParameter("bounds need n >= 3, got n = " + std::to_string(n));
}

// 4mp - 2mp^2 + p^2 D, written as p (2m(1 + q) + pD) so every term is nonnegative.
double second_moment_sum(const ModelParams& params) {
    const double p = params.p();
    return p * (2.0 * params.m() * (1.0 + params.complement()) + p * params.sum_degree_squares());
}

// Tables of R(N, n) and sqrt(N - 1) for N = 2, 3, ... grown on demand, and the
// kernel-driven scan for the maximizing N.
class NScanner {
public:
    explicit NScanner(std::size_t n) : n_(n) {}

    struct Best {
        double value = 0.0;
        std::size_t N = 2;
    };

    Best scan(const kernels::BoundTerms& terms, std::size_t n_max) {
        grow(n_max);
        const kernels::KernelSet& k = kernels::active();
        const std::size_t count = n_max - 1;  // N = 2 .. n_max
        Best best{-1.0, 2};
        out_.resize(std::min<std::size_t>(count, kBlock));
        for (std::size_t start = 0; start < count; start += kBlock) {
            const std::size_t len = std::min(kBlock, count - start);
            std::span<double> out(out_.data(), len);
            k.bound_ratios(std::span<const double>(r_).subspan(start, len),
                           std::span<const double>(sqrt_).subspan(start, len), terms, out);
            for (std::size_t i = 0; i < len; ++i) {
                if (out[i] > best.value) best = {out[i], start + i + 2};
            }
        }
        return best;
    }

    double r(std::size_t N) {
        grow(N);
        return r_[N - 2];
    }
    double sqrt_nm1(std::size_t N) {
        grow(N);
        return sqrt_[N - 2];
    }

private:
    static constexpr std::size_t kBlock = 8192;

    void grow(std::size_t n_max) {
        for (std::size_t N = r_.size() + 2; N <= n_max; ++N) {
            r_.push_back(r_factor(N, n_));
            sqrt_.push_back(std::sqrt(static_cast<double>(N - 1)));
        }
    }

    std::size_t n_;
    std::vector<double> r_;
    std::vector<double> sqrt_;
    std::vector<double> out_;
};

std::size_t n_range_from_ratio(double s2, double four_m2p2, std::size_t n_cap) {
    const std::size_t cap = std::max<std::size_t>(n_cap, 2);
    if (!(s2 > 0.0)) return cap;
    const double ratio = (s2 + four_m2p2) / s2;
    if (!(ratio < static_cast<double>(cap))) return cap;
    return std::max<std::size_t>(static_cast<std::size_t>(std::floor(ratio)), 2);
}

BoundResult general_bound(const ModelParams& params, const BoundOptions& options, NScanner& scanner) {
    const double n1 = static_cast<double>(params.n() - 1);
    BoundResult out;
    const double s2 = s_squared(params);
    out.s_value = std::sqrt(s2);
    out.mu = ell_mean(params);
    out.sigma_squared = s2 / (n1 * n1);
    out.n_search_max = n_search_max(params, options.n_cap);

    const kernels::BoundTerms terms{2.0 * params.m() * params.p(), out.s_value, n1 * second_moment_sum(params)};
    const NScanner::Best best = scanner.scan(terms, out.n_search_max);
    out.probability_lower_bound = best.value;
    out.maximizing_N = best.N;

    const double r = scanner.r(best.N);
    const double num = std::max(0.0, terms.two_mp * r - terms.s * scanner.sqrt_nm1(best.N));
    out.numerator = num * num;
    out.denominator = (terms.denom_scale * r) * r;
    return out;
}

BoundResult complete_bound(std::size_t n, double p, double q, const BoundOptions& options, NScanner& scanner) {
    const double nd = static_cast<double>(n);
    const double n1 = nd - 1.0;
    BoundResult out;
    out.mu = nd * p;
    out.sigma_squared = 2.0 * nd * p * q;
    out.s_value = n1 * std::sqrt(out.sigma_squared);
    // (S^2 + 4m^2p^2) / S^2 = (2q + np) / (2q) for K_n.
    out.n_search_max = n_range_from_ratio(2.0 * q, nd * p, options.n_cap);

    const kernels::BoundTerms terms{std::sqrt(nd * n1 * p), std::sqrt(2.0 * n1 * q), n1 * (2.0 * q + nd * p)};
    const NScanner::Best best = scanner.scan(terms, out.n_search_max);
    out.probability_lower_bound = best.value;
    out.maximizing_N = best.N;

    const double r = scanner.r(best.N);
    const double num = std::max(0.0, terms.two_mp * r - terms.s * scanner.sqrt_nm1(best.N));
    out.numerator = num * num;
    out.denominator = (terms.denom_scale * r) * r;
    return out;
}

// Linear scan over T = 1 .. t_max. `evaluate(p_hat, q_hat)` returns the bound
// of the union with edge probability p_hat.
TStarResult scan_horizon(double p, double epsilon, std::size_t t_max,
                         const std::function<BoundResult(double, double)>& evaluate) {
    check_open_probability(p, "edge probability p");
    check_open_probability(epsilon, "epsilon");
    if (t_max == 0) throw InvalidParameter("t_max must be at least 1");

    const double target = 1.0 - epsilon;
    TStarResult out;
    out.epsilon = epsilon;
    double prev_p = std::numeric_limits<double>::quiet_NaN();
    double prev_q = prev_p;
    BoundResult current;
    TStarTracePoint best;
    best.bound = -1.0;
    for (std::size_t T = 1; T <= t_max; ++T) {
        const double p_hat = union_edge_probability(p, T);
        const double q_hat = union_edge_absence(p, T);
        // Saturated: (p_hat, q_hat) identical to the previous step, so the bound is too.
        if (!(p_hat == prev_p && q_hat == prev_q)) current = evaluate(p_hat, q_hat);
        prev_p = p_hat;
        prev_q = q_hat;

        const TStarTracePoint point{T, p_hat, current.probability_lower_bound, current.maximizing_N};
        out.trace.push_back(point);
        if (point.bound > best.bound) best = point;
        if (point.bound >= target) {
            out.t_star = T;
            return out;
        }
    }
    throw TStarNotFound("no T <= " + std::to_string(t_max) + " reaches bound " + std::to_string(target) +
                            "; best bound " + std::to_string(best.bound) + " at T = " + std::to_string(best.T),
                        static_cast<long long>(best.T), best.bound);
}

}  // namespace

GraphSummary GraphSummary::of(const UnderlyingGraph& g) {
    return {g.n(), static_cast<std::uint64_t>(g.m()), conngraph::sum_degree_squares(g)};
}

ModelParams::ModelParams(const UnderlyingGraph& graph, double p) : ModelParams(GraphSummary::of(graph), p) {}

ModelParams::ModelParams(const GraphSummary& graph, double p) : ModelParams(graph, p, 1.0 - p, false) {}

ModelParams::ModelParams(const GraphSummary& graph, double p, double q, bool allow_saturated)
    : graph_(graph), p_(p), q_(q) {
    check_vertex_count(graph.n);
    if (allow_saturated) {
        if (!(p > 0.0 && p <= 1.0 && q >= 0.0 && q < 1.0)) {
            throw InvalidParameter("union edge probability out of range: " + std::to_string(p));
        }
    } else {
        check_open_probability(p, "edge probability p");
    }
}

ModelParams ModelParams::for_union(const GraphSummary& graph, double p, std::size_t T) {
    check_open_probability(p, "edge probability p");
    if (T == 0) throw InvalidParameter("union horizon T must be at least 1");
    return ModelParams(graph, union_edge_probability(p, T), union_edge_absence(p, T), true);
}

ModelParams ModelParams::from_union_probability(const GraphSummary& graph, double p_hat, double q_hat) {
    return ModelParams(graph, p_hat, q_hat, true);
}

ModelParams ModelParams::for_union(const UnderlyingGraph& graph, double p, std::size_t T) {
    return for_union(GraphSummary::of(graph), p, T);
}

double r_factor(std::size_t N, std::size_t n) {
    check_vertex_count(n);
    if (N == 0) throw InvalidParameter("N must be at least 1");
    const double log_ratio = std::log1p(-1.0 / static_cast<double>(n - 1));
    return -std::expm1(static_cast<double>(N - 1) * log_ratio);
}

double ell_mean(const ModelParams& params) {
    return 2.0 * params.m() * params.p() / static_cast<double>(params.n() - 1);
}

double s_squared(const ModelParams& params) {
    // S^2 = p (A + qB) with
    //   A = (n-1)(2m + D) - 4m^2,  B = (n-1)(2m - D) + 4m^2,
    // both exact integers. Algebraically equal to the three-term form but free
    // of cancellation as p -> 1 (A = 0 for K_n).
    using Wide = __int128;
    const Wide n1 = static_cast<Wide>(params.n() - 1);
    const Wide m = static_cast<Wide>(params.graph().m);
    const Wide d = static_cast<Wide>(params.graph().sum_degree_squares);
    const Wide a = n1 * (2 * m + d) - 4 * m * m;
    const Wide b = n1 * (2 * m - d) + 4 * m * m;
    const double radicand = params.p() * (static_cast<double>(a) + params.complement() * static_cast<double>(b));
    if (radicand < -1e-9) {
        throw NegativeRadicand("S^2 evaluated to " + std::to_string(radicand));
    }
    return std::max(radicand, 0.0);
}

double s_value(const ModelParams& params) { return std::sqrt(s_squared(params)); }

double ell_variance(const ModelParams& params) {
    const double n1 = static_cast<double>(params.n() - 1);
    const double s = s_value(params);
    return s * s / (n1 * n1);
}

double ell_first_order_lower(const ModelParams& params, std::size_t N) {
    if (N == 0) throw InvalidParameter("N must be at least 1");
    const double n1 = static_cast<double>(params.n() - 1);
    const double value =
        (2.0 * params.m() * params.p() - s_value(params) * std::sqrt(static_cast<double>(N - 1))) / n1;
    return std::max(0.0, value);
}

double lambda2_mean_lower(const ModelParams& params, std::size_t N) {
    if (N < 2) throw InvalidParameter("lambda_2 lower bound needs N >= 2, got " + std::to_string(N));
    const double n1 = static_cast<double>(params.n() - 1);
    const double r = r_factor(N, params.n());
    const double bracket =
        2.0 * params.m() * params.p() / n1 * r - s_value(params) * std::sqrt(static_cast<double>(N - 1)) / n1;
    return std::max(0.0, bracket / r);
}

double lambda2_sq_mean_upper(const ModelParams& params) {
    return second_moment_sum(params) / static_cast<double>(params.n() - 1);
}

double connectivity_bound_at_N(const ModelParams& params, std::size_t N) {
    if (N < 2) throw InvalidParameter("connectivity bound needs N >= 2, got " + std::to_string(N));
    const double r = r_factor(N, params.n());
    const double scale = static_cast<double>(params.n() - 1) * second_moment_sum(params);
    double num = 2.0 * params.m() * params.p() * r - s_value(params) * std::sqrt(static_cast<double>(N - 1));
    num = num > 0.0 ? num : 0.0;
    const double v = (num * num) / ((scale * r) * r);
    return v < 1.0 ? v : 1.0;
}

std::size_t n_search_max(const ModelParams& params, std::size_t n_cap) {
    const double two_mp = 2.0 * params.m() * params.p();
    return n_range_from_ratio(s_squared(params), two_mp * two_mp, n_cap);
}

BoundResult connectivity_bound(const ModelParams& params, const BoundOptions& options) {
    NScanner scanner(params.n());
    return general_bound(params, options, scanner);
}

double union_edge_probability(double p, std::size_t T) {
    if (!(p >= 0.0 && p <= 1.0)) throw InvalidParameter("edge probability must lie in [0, 1]");
    if (T == 0) throw InvalidParameter("union horizon T must be at least 1");
    if (p == 1.0) return 1.0;
    return -std::expm1(static_cast<double>(T) * std::log1p(-p));
}

double union_edge_absence(double p, std::size_t T) {
    if (!(p >= 0.0 && p <= 1.0)) throw InvalidParameter("edge probability must lie in [0, 1]");
    if (T == 0) throw InvalidParameter("union horizon T must be at least 1");
    if (p == 1.0) return 0.0;
    return std::exp(static_cast<double>(T) * std::log1p(-p));
}

TStarResult t_star(const UnderlyingGraph& graph, double p, double epsilon, std::size_t t_max,
                   const BoundOptions& options) {
    const GraphSummary summary = GraphSummary::of(graph);
    check_vertex_count(summary.n);
    NScanner scanner(summary.n);
    return scan_horizon(p, epsilon, t_max, [&](double p_hat, double q_hat) {
        return general_bound(ModelParams::from_union_probability(summary, p_hat, q_hat), options, scanner);
    });
}

BoundResult connectivity_bound_complete(std::size_t n, double p, const BoundOptions& options) {
    check_vertex_count(n);
    check_open_probability(p, "edge probability p");
    NScanner scanner(n);
    return complete_bound(n, p, 1.0 - p, options, scanner);
}

TStarResult t_star_complete(std::size_t n, double p, double epsilon, std::size_t t_max,
                            const BoundOptions& options) {
    check_vertex_count(n);
    NScanner scanner(n);
    return scan_horizon(p, epsilon, t_max,
                        [&](double p_hat, double q_hat) { return complete_bound(n, p_hat, q_hat, options, scanner); });
}

}  // namespace conngraph
