#include "conngraph/random.hpp"

#include <string>

#include "conngraph/errors.hpp"

namespace conngraph {
namespace {

void check_probability(double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw InvalidParameter("edge probability must lie in [0, 1], got " + std::to_string(p));
}

}  // namespace

SampledGraph sample_graph(const UnderlyingGraph& parent, double p, RandomStream& rng) {
    check_probability(p);
    std::vector<std::uint8_t> mask(parent.m());
    for (auto& bit : mask) bit = uniform01(rng) < p ? 1 : 0;
    return SampledGraph(parent, std::move(mask));
}

SampledGraph sample_union(const UnderlyingGraph& parent, double p, std::size_t T, RandomStream& rng) {
    check_probability(p);
    if (T == 0) throw InvalidParameter("union horizon T must be at least 1");
    std::vector<SampledGraph> draws;
    draws.reserve(T);
    for (std::size_t t = 0; t < T; ++t) draws.push_back(sample_graph(parent, p, rng));
    return graph_union(draws);
}

}  // namespace conngraph
