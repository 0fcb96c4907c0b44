#include "percolab/graph.hpp"

#include <algorithm>

#include "percolab/errors.hpp"

namespace percolab {

Graph Graph::from_edges(std::int32_t n, std::vector<std::pair<std::int32_t, std::int32_t>> edges) {
    Graph g;
    g.n_ = n;
    std::vector<std::pair<std::int32_t, std::int32_t>> dir;
    dir.reserve(edges.size() * 2);
    for (auto [u, v] : edges) {
        if (u < 0 || v < 0 || u >= n || v >= n) throw ValidationError("edge endpoint out of range");
        if (u == v) continue;
        dir.emplace_back(u, v);
        dir.emplace_back(v, u);
    }
    std::sort(dir.begin(), dir.end());
    dir.erase(std::unique(dir.begin(), dir.end()), dir.end());
    g.offsets_.assign(n + 1, 0);
    for (auto [u, v] : dir) ++g.offsets_[u + 1];
    for (std::int32_t i = 0; i < n; ++i) g.offsets_[i + 1] += g.offsets_[i];
    g.adj_.resize(dir.size());
    for (std::size_t i = 0; i < dir.size(); ++i) g.adj_[i] = dir[i].second;
    return g;
}

bool Graph::has_edge(std::int32_t u, std::int32_t v) const {
    const auto nb = neighbors(u);
    return std::binary_search(nb.begin(), nb.end(), v);
}

std::vector<std::pair<std::int32_t, std::int32_t>> Graph::edge_list() const {
    std::vector<std::pair<std::int32_t, std::int32_t>> out;
    for (std::int32_t u = 0; u < n_; ++u) {
        for (auto v : neighbors(u)) {
            if (u < v) out.emplace_back(u, v);
        }
    }
    return out;
}

bool Graph::is_tree() const {
    if (n_ == 0) return false;
    if (num_edges() != n_ - 1) return false;
    std::vector<char> seen(n_, 0);
    std::vector<std::int32_t> stack{0};
    seen[0] = 1;
    std::int32_t count = 1;
    while (!stack.empty()) {
        const auto u = stack.back();
        stack.pop_back();
        for (auto v : neighbors(u)) {
            if (!seen[v]) {
                seen[v] = 1;
                ++count;
                stack.push_back(v);
            }
        }
    }
    return count == n_;
}

Graph Graph::path(std::int32_t n) {
    std::vector<std::pair<std::int32_t, std::int32_t>> e;
    for (std::int32_t i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
    return from_edges(n, e);
}

Graph Graph::cycle(std::int32_t n) {
    std::vector<std::pair<std::int32_t, std::int32_t>> e;
    for (std::int32_t i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
    return from_edges(n, e);
}

Graph Graph::complete(std::int32_t n) {
    std::vector<std::pair<std::int32_t, std::int32_t>> e;
    for (std::int32_t i = 0; i < n; ++i)
        for (std::int32_t j = i + 1; j < n; ++j) e.emplace_back(i, j);
    return from_edges(n, e);
}

Graph Graph::star(std::int32_t leaves) {
    std::vector<std::pair<std::int32_t, std::int32_t>> e;
    for (std::int32_t i = 1; i <= leaves; ++i) e.emplace_back(0, i);
    return from_edges(leaves + 1, e);
}

}  // namespace percolab
