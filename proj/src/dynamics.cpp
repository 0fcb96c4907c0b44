#include "percolab/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "percolab/errors.hpp"
#include "percolab/stats.hpp"

namespace percolab {

std::int32_t WalkTrace::at(double t) const {
    auto it = std::upper_bound(times.begin(), times.end(), t);
    if (it == times.begin()) return start;
    return vertices[static_cast<std::size_t>(it - times.begin()) - 1];
}

namespace {

void check_start(const Graph& g, std::int32_t start) {
    if (start < 0 || start >= g.num_vertices()) throw ValidationError("start vertex out of range");
    if (g.degree(start) == 0) throw ValidationError("start vertex " + std::to_string(start) + " is isolated");
}

}  // namespace

WalkTrace srw(const Graph& g, std::int32_t start, std::int64_t steps, Rng rng) {
    check_start(g, start);
    Rng jumps = rng.split(0);
    WalkTrace w;
    w.start = start;
    w.vertices.reserve(steps + 1);
    w.times.reserve(steps + 1);
    std::int32_t x = start;
    w.vertices.push_back(x);
    w.times.push_back(0.0);
    for (std::int64_t i = 1; i <= steps; ++i) {
        const auto nb = g.neighbors(x);
        x = nb[jumps.below(nb.size())];
        w.vertices.push_back(x);
        w.times.push_back(static_cast<double>(i));
    }
    return w;
}

WalkTrace ctrw(const Graph& g, std::int32_t start, double horizon, Rng rng) {
    check_start(g, start);
    Rng jumps = rng.split(0);
    Rng hold = rng.split(1);
    WalkTrace w;
    w.start = start;
    w.continuous = true;
    std::int32_t x = start;
    double t = 0.0;
    w.vertices.push_back(x);
    w.times.push_back(0.0);
    while (true) {
        t += hold.exponential(1.0);
        if (t > horizon) break;
        const auto nb = g.neighbors(x);
        x = nb[jumps.below(nb.size())];
        w.vertices.push_back(x);
        w.times.push_back(t);
    }
    return w;
}

std::vector<double> SpannedTree::distances_from(std::int32_t node) const {
    std::vector<double> d(num_nodes, -1.0);
    std::vector<std::int32_t> stack{node};
    d[node] = 0.0;
    while (!stack.empty()) {
        const auto u = stack.back();
        stack.pop_back();
        for (auto [v, len] : adj[u]) {
            if (d[v] < 0.0) {
                d[v] = d[u] + len;
                stack.push_back(v);
            }
        }
    }
    return d;
}

SpannedTree spanned_tree(const DiscretizedCrt& crt) {
    const auto n = static_cast<std::int32_t>(crt.times.size());
    if (n < 2) throw DomainError("spanned tree needs at least two points");
    std::vector<std::int32_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return crt.grid[a] < crt.grid[b]; });
    // branch node i sits between order[i] and order[i+1] at the depth of the separating minimum
    const std::int32_t nb = n - 1;
    std::vector<double> height(n + nb);
    for (std::int32_t p = 0; p < n; ++p) height[p] = crt.heights[p];
    for (std::int32_t i = 0; i < nb; ++i) {
        const auto gi = crt.grid[order[i]], gj = crt.grid[order[i + 1]];
        const double ha = crt.heights[order[i]], hb = crt.heights[order[i + 1]];
        // recover the minimum from the metric: d = ha + hb - 2 m
        const double d = crt.space.dist(order[i], order[i + 1]);
        height[n + i] = gi == gj ? std::min(ha, hb) : std::max(0.0, (ha + hb - d) / 2.0);
    }
    std::vector<std::int32_t> parent(n + nb, -1);
    // Cartesian tree of the branch depths
    std::vector<std::int32_t> stack;
    for (std::int32_t i = 0; i < nb; ++i) {
        std::int32_t last = -1;
        while (!stack.empty() && height[n + stack.back()] > height[n + i]) {
            last = stack.back();
            stack.pop_back();
        }
        if (last >= 0) parent[n + last] = n + i;
        if (!stack.empty()) parent[n + i] = n + stack.back();
        stack.push_back(i);
    }
    // each point hangs from the deeper of its two neighbouring branch nodes
    for (std::int32_t p = 0; p < n; ++p) {
        std::int32_t best = -1;
        const auto pos = static_cast<std::int32_t>(std::find(order.begin(), order.end(), p) - order.begin());
        for (std::int32_t i : {pos - 1, pos}) {
            if (i < 0 || i >= nb) continue;
            if (best < 0 || height[n + i] > height[best]) best = n + i;
        }
        parent[p] = best;
    }
    // contract zero-length edges
    std::vector<std::int32_t> rep(n + nb);
    std::iota(rep.begin(), rep.end(), 0);
    auto find = [&](std::int32_t x) {
        while (rep[x] != x) x = rep[x] = rep[rep[x]];
        return x;
    };
    const double tiny = 1e-12;
    for (std::int32_t v = 0; v < n + nb; ++v) {
        if (parent[v] >= 0 && std::abs(height[v] - height[parent[v]]) <= tiny) {
            auto a = find(v), b = find(parent[v]);
            if (a != b) rep[std::max(a, b)] = std::min(a, b);  // points keep the smaller ids
        }
    }
    SpannedTree t;
    std::vector<std::int32_t> id(n + nb, -1);
    for (std::int32_t v = 0; v < n + nb; ++v) {
        const auto r = find(v);
        if (id[r] < 0) id[r] = t.num_nodes++;
    }
    t.adj.resize(t.num_nodes);
    t.mass.assign(t.num_nodes, 0.0);
    t.node_of_point.resize(n);
    for (std::int32_t p = 0; p < n; ++p) {
        t.node_of_point[p] = id[find(p)];
        t.mass[t.node_of_point[p]] += crt.space.mass[p];
    }
    for (std::int32_t v = 0; v < n + nb; ++v) {
        if (parent[v] < 0) continue;
        const auto a = id[find(v)], b = id[find(parent[v])];
        if (a == b) continue;
        const double len = std::abs(height[v] - height[parent[v]]);
        t.adj[a].emplace_back(b, len);
        t.adj[b].emplace_back(a, len);
    }
    return t;
}

WalkTrace walk_on_crt(const SpannedTree& tree, std::int32_t start, std::int64_t steps, Rng& rng) {
    if (tree.num_nodes < 2) throw DomainError("walk on a CRT needs at least two distinct nodes");
    if (start < 0 || start >= tree.num_nodes) throw ValidationError("start node out of range");
    WalkTrace w;
    w.start = start;
    w.continuous = true;
    std::int32_t x = start;
    double t = 0.0;
    w.vertices.push_back(x);
    w.times.push_back(0.0);
    for (std::int64_t i = 0; i < steps; ++i) {
        double c = 0.0;
        for (auto [y, len] : tree.adj[x]) c += 1.0 / len;
        if (tree.mass[x] > 0.0) t += rng.exponential(tree.mass[x] / c);
        double u = rng.uniform() * c;
        std::int32_t next = tree.adj[x].back().first;
        for (auto [y, len] : tree.adj[x]) {
            u -= 1.0 / len;
            if (u < 0.0) {
                next = y;
                break;
            }
        }
        x = next;
        w.vertices.push_back(x);
        w.times.push_back(t);
    }
    return w;
}

DisplacementTable displacement_stats(const std::vector<WalkTrace>& traces,
                                     const std::vector<std::vector<double>>& dist,
                                     const std::vector<double>& times, Rng& rng, std::int32_t bootstrap) {
    if (traces.size() < 30) throw DomainError("displacement statistics need at least 30 traces");
    if (dist.size() != traces.size()) throw ValidationError("one distance oracle per trace is required");
    DisplacementTable table;
    std::vector<double> lx, ly;
    for (double t : times) {
        std::vector<double> v;
        v.reserve(traces.size());
        for (std::size_t i = 0; i < traces.size(); ++i) {
            if (t > traces[i].horizon()) throw DomainError("time grid exceeds the trace length");
            v.push_back(dist[i][traces[i].at(t)]);
        }
        DisplacementRow row;
        row.t = t;
        row.mean = mean(v);
        row.median = median(v);
        row.q10 = quantile(v, 0.1);
        row.q90 = quantile(v, 0.9);
        std::vector<double> boot(bootstrap);
        for (auto& b : boot) {
            double s = 0.0;
            for (std::size_t k = 0; k < v.size(); ++k) s += v[rng.below(v.size())];
            b = s / static_cast<double>(v.size());
        }
        row.ci_low = quantile(boot, 0.025);
        row.ci_high = quantile(boot, 0.975);
        table.rows.push_back(row);
        if (t > 0 && row.mean > 0) {
            lx.push_back(std::log(t));
            ly.push_back(std::log(row.mean));
        }
    }
    if (lx.size() >= 2) {
        const auto fit = least_squares(lx, ly);
        table.slope = fit.slope;
        table.slope_se = fit.slope_se;
    }
    return table;
}

std::vector<KsRow> path_law_comparison(const WalkEnsemble& a, const WalkEnsemble& b,
                                       const std::vector<double>& times) {
    for (const auto* e : {&a, &b}) {
        if (!(e->time_scale > 0.0) || !(e->space_scale > 0.0) || !std::isfinite(e->time_scale) ||
            !std::isfinite(e->space_scale)) {
            throw DomainError("path law comparison needs the scaling constants of both ensembles");
        }
    }
    auto samples = [](const WalkEnsemble& e, double t) {
        std::vector<double> v;
        for (std::size_t i = 0; i < e.traces.size(); ++i) {
            const double s = t * e.time_scale;
            if (s > e.traces[i].horizon()) throw DomainError("matched time exceeds the trace length");
            v.push_back(e.space_scale * e.dist[i][e.traces[i].at(s)]);
        }
        return v;
    };
    std::vector<KsRow> rows;
    for (double t : times) {
        const auto r = ks_two_sample(samples(a, t), samples(b, t));
        rows.push_back({t, r.statistic, r.p_value});
    }
    return rows;
}

}  // namespace percolab
