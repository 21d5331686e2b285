#include "conngraph/graph.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "conngraph/errors.hpp"

namespace conngraph {

bool UnderlyingGraph::same_graph(const UnderlyingGraph& other) const noexcept {
    if (data_ == other.data_) return true;
    return data_->n == other.data_->n && data_->edges == other.data_->edges;
}

UnderlyingGraph from_edge_list(std::size_t n, std::span<const VertexPair> pairs) {
    if (n == 0) throw InvalidParameter("graph must have at least one vertex");

    auto data = std::make_shared<UnderlyingGraph::Data>();
    data->n = n;
    data->edges.reserve(pairs.size());
    for (const auto& [a, b] : pairs) {
        if (a >= n || b >= n) {
            throw InvalidEdge("edge (" + std::to_string(a) + ", " + std::to_string(b) +
                              ") out of range for n = " + std::to_string(n));
        }
        if (a == b) throw InvalidEdge("self-loop at vertex " + std::to_string(a));
        data->edges.push_back({static_cast<Vertex>(std::min(a, b)), static_cast<Vertex>(std::max(a, b))});
    }
    std::sort(data->edges.begin(), data->edges.end());
    data->edges.erase(std::unique(data->edges.begin(), data->edges.end()), data->edges.end());

    data->degrees.assign(n, 0);
    for (const Edge& e : data->edges) {
        ++data->degrees[e.u];
        ++data->degrees[e.v];
    }

    UnderlyingGraph g(std::move(data));
    if (!is_connected(g)) {
        throw DisconnectedTemplate("template graph on " + std::to_string(n) + " vertices is not connected");
    }
    return g;
}

UnderlyingGraph complete(std::size_t n) {
    std::vector<VertexPair> pairs;
    pairs.reserve(n * (n - (n > 0 ? 1 : 0)) / 2);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
    return from_edge_list(n, pairs);
}

UnderlyingGraph complete_minus_cycle(std::size_t n) {
    if (n < 4) throw InvalidParameter("K_n minus C_n needs n >= 5, got " + std::to_string(n));
    std::vector<VertexPair> pairs;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const bool on_cycle = j == i + 1 || (i == 0 && j == n - 1);
            if (!on_cycle) pairs.emplace_back(i, j);
        }
    }
    return from_edge_list(n, pairs);
}

std::uint64_t sum_degree_squares(const UnderlyingGraph& g) {
    std::uint64_t total = 0;
    for (std::size_t d : g.degrees()) total += static_cast<std::uint64_t>(d) * d;
    return total;
}

SampledGraph::SampledGraph(UnderlyingGraph parent, std::vector<std::uint8_t> present)
    : parent_(std::move(parent)), present_(std::move(present)) {
    if (present_.size() != parent_.m()) {
        throw InvalidParameter("sample mask has " + std::to_string(present_.size()) +
                               " entries, parent has " + std::to_string(parent_.m()) + " edges");
    }
}

SampledGraph SampledGraph::full(UnderlyingGraph parent) {
    std::vector<std::uint8_t> mask(parent.m(), 1);
    return SampledGraph(std::move(parent), std::move(mask));
}

SampledGraph SampledGraph::empty(UnderlyingGraph parent) {
    std::vector<std::uint8_t> mask(parent.m(), 0);
    return SampledGraph(std::move(parent), std::move(mask));
}

std::size_t SampledGraph::edge_count() const noexcept {
    return static_cast<std::size_t>(std::count_if(present_.begin(), present_.end(),
                                                  [](std::uint8_t b) { return b != 0; }));
}

std::vector<Edge> SampledGraph::present_edges() const {
    std::vector<Edge> out;
    const auto edges = parent_.edges();
    for (std::size_t k = 0; k < edges.size(); ++k)
        if (present_[k]) out.push_back(edges[k]);
    return out;
}

bool SampledGraph::operator==(const SampledGraph& other) const {
    return parent_.same_graph(other.parent_) && present_ == other.present_;
}

void DisjointSet::reset(std::size_t n) {
    parent_.resize(n);
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
    size_.assign(n, 1);
    components_ = n;
}

std::size_t DisjointSet::find(std::size_t x) noexcept {
    while (parent_[x] != x) {
        parent_[x] = parent_[parent_[x]];
        x = parent_[x];
    }
    return x;
}

bool DisjointSet::unite(std::size_t x, std::size_t y) noexcept {
    x = find(x);
    y = find(y);
    if (x == y) return false;
    if (size_[x] < size_[y]) std::swap(x, y);
    parent_[y] = x;
    size_[x] += size_[y];
    --components_;
    return true;
}

bool is_connected(const UnderlyingGraph& g) {
    DisjointSet ds(g.n());
    for (const Edge& e : g.edges()) {
        ds.unite(e.u, e.v);
        if (ds.components() == 1) return true;
    }
    return ds.components() <= 1;
}

bool is_connected(const SampledGraph& g) {
    DisjointSet ds(g.n());
    const auto edges = g.parent().edges();
    const auto present = g.present();
    for (std::size_t k = 0; k < edges.size(); ++k) {
        if (!present[k]) continue;
        ds.unite(edges[k].u, edges[k].v);
        if (ds.components() == 1) return true;
    }
    return ds.components() <= 1;
}

SampledGraph graph_union(std::span<const SampledGraph> samples) {
    if (samples.empty()) throw EmptyUnion("union of an empty list of samples");
    const UnderlyingGraph& parent = samples.front().parent();
    std::vector<std::uint8_t> mask(parent.m(), 0);
    for (const SampledGraph& s : samples) {
        if (!s.parent().same_graph(parent)) throw MismatchedParents("samples in a union must share one parent graph");
        const auto present = s.present();
        for (std::size_t k = 0; k < mask.size(); ++k) mask[k] |= present[k];
    }
    return SampledGraph(parent, std::move(mask));
}

namespace {

template <class EdgeRange>
Matrix laplacian_of(std::size_t n, const EdgeRange& edges) {
    Matrix l(n);
    for (const Edge& e : edges) {
        l(e.u, e.u) += 1.0;
        l(e.v, e.v) += 1.0;
        l(e.u, e.v) = -1.0;
        l(e.v, e.u) = -1.0;
    }
    return l;
}

}  // namespace

Matrix laplacian(const SampledGraph& g) { return laplacian_of(g.n(), g.present_edges()); }

Matrix laplacian(const UnderlyingGraph& g) { return laplacian_of(g.n(), g.edges()); }

}  // namespace conngraph
