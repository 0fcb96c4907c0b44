#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace percolab {

/// Simple undirected graph in compressed adjacency form. Parallel edges are merged and
/// self-loops dropped on construction.
class Graph {
public:
    Graph() = default;
    static Graph from_edges(std::int32_t n, std::vector<std::pair<std::int32_t, std::int32_t>> edges);

    std::int32_t num_vertices() const { return n_; }
    std::int64_t num_edges() const { return static_cast<std::int64_t>(adj_.size()) / 2; }
    std::span<const std::int32_t> neighbors(std::int32_t v) const {
        return {adj_.data() + offsets_[v], adj_.data() + offsets_[v + 1]};
    }
    std::int32_t degree(std::int32_t v) const { return offsets_[v + 1] - offsets_[v]; }
    bool has_edge(std::int32_t u, std::int32_t v) const;
    std::vector<std::pair<std::int32_t, std::int32_t>> edge_list() const;
    bool is_tree() const;

    static Graph path(std::int32_t n);
    static Graph cycle(std::int32_t n);
    static Graph complete(std::int32_t n);
    static Graph star(std::int32_t leaves);

private:
    std::int32_t n_ = 0;
    std::vector<std::int32_t> offsets_{0};
    std::vector<std::int32_t> adj_;
};

}  // namespace percolab
