#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <memory>
#include <span>
#include <utility>
#include <vector>

#include "conngraph/matrix.hpp"

namespace conngraph {

using Vertex = std::uint32_t;
using VertexPair = std::pair<std::size_t, std::size_t>;

/// Undirected edge stored as (min, max).
struct Edge {
    Vertex u = 0;
    Vertex v = 0;

    auto operator<=>(const Edge&) const = default;
};

/// The fixed connected template G. Immutable once built; copies share the
/// same storage, so passing it by value is cheap and thread-safe.
class UnderlyingGraph {
public:
    std::size_t n() const noexcept { return data_->n; }
    std::size_t m() const noexcept { return data_->edges.size(); }
    std::span<const Edge> edges() const noexcept { return data_->edges; }
    std::span<const std::size_t> degrees() const noexcept { return data_->degrees; }

    /// True if both handles refer to the same storage or describe the same
    /// vertex count and edge set.
    bool same_graph(const UnderlyingGraph& other) const noexcept;

private:
    struct Data {
        std::size_t n = 0;
        std::vector<Edge> edges;
        std::vector<std::size_t> degrees;
    };

    explicit UnderlyingGraph(std::shared_ptr<const Data> data) : data_(std::move(data)) {}

    friend UnderlyingGraph from_edge_list(std::size_t n, std::span<const VertexPair> pairs);

    std::shared_ptr<const Data> data_;
};

/// Builds a template from vertex pairs. Pairs are normalized to (min, max)
/// and duplicates collapse. Throws InvalidParameter for n == 0, InvalidEdge on
/// self-loops or out-of-range indices, DisconnectedTemplate if the result is
/// not connected.
UnderlyingGraph from_edge_list(std::size_t n, std::span<const VertexPair> pairs);

inline UnderlyingGraph from_edge_list(std::size_t n, std::initializer_list<VertexPair> pairs) {
    return from_edge_list(n, std::span<const VertexPair>(pairs.begin(), pairs.size()));
}

/// K_n.
UnderlyingGraph complete(std::size_t n);

/// K_n minus the cycle (0,1),(1,2),...,(n-1,0). Requires n >= 5; n == 4
/// leaves two disjoint diagonals (DisconnectedTemplate), n < 4 is
/// InvalidParameter.
UnderlyingGraph complete_minus_cycle(std::size_t n);

std::uint64_t sum_degree_squares(const UnderlyingGraph& g);

/// One realization drawn from G(G, p), or a union of several. `present[k]`
/// says whether parent edge k is in the sample.
class SampledGraph {
public:
    SampledGraph(UnderlyingGraph parent, std::vector<std::uint8_t> present);

    /// Every parent edge present.
    static SampledGraph full(UnderlyingGraph parent);
    /// No edges present.
    static SampledGraph empty(UnderlyingGraph parent);

    const UnderlyingGraph& parent() const noexcept { return parent_; }
    std::span<const std::uint8_t> present() const noexcept { return present_; }
    std::size_t n() const noexcept { return parent_.n(); }
    std::size_t edge_count() const noexcept;
    std::vector<Edge> present_edges() const;

    bool operator==(const SampledGraph& other) const;

private:
    UnderlyingGraph parent_;
    std::vector<std::uint8_t> present_;
};

/// Union-find with path halving and union by size.
class DisjointSet {
public:
    explicit DisjointSet(std::size_t n = 0) { reset(n); }

    void reset(std::size_t n);
    std::size_t find(std::size_t x) noexcept;
    /// Returns true if x and y were in different sets.
    bool unite(std::size_t x, std::size_t y) noexcept;
    std::size_t components() const noexcept { return components_; }

private:
    std::vector<std::size_t> parent_;
    std::vector<std::size_t> size_;
    std::size_t components_ = 0;
};

bool is_connected(const UnderlyingGraph& g);
bool is_connected(const SampledGraph& g);

/// Union of samples over one parent. Throws EmptyUnion, MismatchedParents.
SampledGraph graph_union(std::span<const SampledGraph> samples);

/// L = D - A over the present edges.
Matrix laplacian(const SampledGraph& g);
Matrix laplacian(const UnderlyingGraph& g);

}  // namespace conngraph
