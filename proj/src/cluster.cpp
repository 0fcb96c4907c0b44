#include "percolab/cluster.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "json.hpp"

#include "percolab/errors.hpp"

namespace percolab {

namespace {

struct Fill {
    ColoredMap cmap;
    Graph graph;
};

Fill sample_fill(std::int32_t L, std::vector<Color> boundary, double p, const PartitionFunction& z, Rng& rng) {
    Fill f;
    f.cmap = percolate(sample_boltzmann(L, z, rng), p, std::move(boundary), rng);
    f.graph = f.cmap.map.graph();
    return f;
}

std::vector<std::int32_t> iota_vec(std::int32_t n) {
    std::vector<std::int32_t> v(n);
    for (std::int32_t i = 0; i < n; ++i) v[i] = i;
    return v;
}

std::int64_t internal_in(const std::vector<std::int32_t>& comp, std::int32_t m) {
    std::int64_t c = 0;
    for (auto v : comp) c += (v >= m);
    return c;
}

}  // namespace

Decoration UnitCycleFamily::sample(std::int32_t boundary_length, Rng&) const {
    if (boundary_length < 2) throw DomainError("decoration boundary length must be >= 2");
    Decoration d;
    d.graph = Graph::cycle(boundary_length);
    d.boundary = iota_vec(boundary_length);
    d.edge_multiplicity_total = boundary_length;
    return d;
}

PercolatedBoltzmannFamily::PercolatedBoltzmannFamily(const ModelParams& params)
    : params_(params), z_(std::make_shared<PartitionFunction>(params.q)) {}

PercolatedBoltzmannFamily::PercolatedBoltzmannFamily(const ModelParams& params,
                                                     std::shared_ptr<const PartitionFunction> z)
    : params_(params), z_(std::move(z)) {}

Decoration PercolatedBoltzmannFamily::sample(std::int32_t L, Rng& rng) const {
    if (L < 2) throw DomainError("decoration boundary length must be >= 2");
    Fill f = sample_fill(L, all_black(L), params_.p_c, *z_, rng);
    const auto comp = black_component(f.graph, f.cmap.color, iota_vec(L));
    std::vector<std::int32_t> id(f.graph.num_vertices(), -1);
    // boundary vertices are 0..L-1 and come first in the component
    for (std::size_t i = 0; i < comp.size(); ++i) id[comp[i]] = static_cast<std::int32_t>(i);
    std::vector<std::pair<std::int32_t, std::int32_t>> e;
    for (auto [u, v] : f.graph.edge_list()) {
        if (id[u] >= 0 && id[v] >= 0) e.emplace_back(id[u], id[v]);
    }
    Decoration d;
    d.graph = Graph::from_edges(static_cast<std::int32_t>(comp.size()), std::move(e));
    d.boundary = iota_vec(L);
    d.edge_multiplicity_total = d.graph.num_edges();
    return d;
}

DecorationMass decoration_mass(const Decoration& d) {
    DecorationMass m;
    m.counting = d.graph.num_vertices() - 1;
    m.degree = 2 * d.graph.num_edges();
    return m;
}

DecoratedGraph decorate_tree(const TwoTypeTree& tree, const DecorationFamily& family, Rng& rng) {
    for (std::int32_t v = 0; v < tree.size(); ++v) {
        if (tree.num_children(v) == 0 && !tree.is_black(v)) {
            throw ValidationError("decorate_tree needs all leaves black");
        }
    }
    DecoratedGraph out;
    out.vertex_of_black.assign(tree.size(), -1);
    out.block.assign(tree.size(), {});
    std::int32_t n = 0;
    for (std::int32_t v = 0; v < tree.size(); ++v) {
        if (tree.is_black(v)) out.vertex_of_black[v] = n++;
    }
    std::vector<std::pair<std::int32_t, std::int32_t>> edges;
    for (std::int32_t w = 0; w < tree.size(); ++w) {
        if (tree.is_black(w)) continue;
        const std::int32_t L = tree.num_children(w) + 1;
        Decoration d = family.sample(L, rng);
        if (static_cast<std::int32_t>(d.boundary.size()) != L) {
            throw ValidationError("decoration family returned a wrong boundary length");
        }
        std::vector<std::int32_t> id(d.graph.num_vertices(), -1);
        id[d.boundary[0]] = out.vertex_of_black[tree.parent(w)];
        std::int32_t j = 1;
        for (std::int32_t c = tree.first_child(w); c != TwoTypeTree::none; c = tree.next_sibling(c)) {
            id[d.boundary[j++]] = out.vertex_of_black[c];
        }
        for (auto& x : id) {
            if (x < 0) x = n++;
        }
        for (auto [u, v] : d.graph.edge_list()) edges.emplace_back(id[u], id[v]);
        out.block[w] = id;
    }
    out.graph = Graph::from_edges(n, std::move(edges));
    out.root = out.vertex_of_black[tree.root()];
    out.counting.assign(n, 1.0);
    out.counting[out.root] = 0.0;
    return out;
}

Cluster build_cluster(const LatticePath& path, const ModelParams& params, const PartitionFunction& z, Rng& rng) {
    const ExtendedStructures ext = extended_structures(path);
    const TwoTypeTree& ts = ext.tree_star.tree;
    const Looptree& lt = ext.loop_star.looptree;
    const std::int64_t tau = path.length();

    Cluster c;
    c.source = path;
    c.l = ext.l;
    c.k = ext.k;
    c.xi.assign(tau + 1, 0);
    c.source_tree_black = ts.num_black() - (ext.k + 1);

    // pre-pruning black vertices: non-ramp loop vertices first
    std::vector<std::int32_t> gid(lt.num_vertices, -1);
    std::vector<Provenance> prov;
    std::vector<std::int32_t> face;
    std::int32_t n = 0;
    const auto& root_loop = lt.loops[ext.root_loop];
    std::vector<char> on_root_loop(lt.num_vertices, 0);
    for (auto v : root_loop) on_root_loop[v] = 1;
    for (std::int32_t v = 0; v < lt.num_vertices; ++v) {
        if (lt.vertex_label[v] < ext.offset) continue;  // ramp vertex, white
        gid[v] = n++;
        prov.push_back(on_root_loop[v] ? Provenance::root_loop : Provenance::tree_loop);
        face.push_back(-1);
    }
    c.loop_vertex_count = n;

    std::vector<std::pair<std::int32_t, std::int32_t>> edges;
    for (std::size_t li = 0; li < lt.loops.size(); ++li) {
        const auto& loop = lt.loops[li];
        const auto L = static_cast<std::int32_t>(loop.size());
        const bool is_root = static_cast<std::int32_t>(li) == ext.root_loop;
        std::int32_t rot;
        std::vector<Color> descriptor;
        if (is_root) {
            rot = static_cast<std::int32_t>(std::find(loop.begin(), loop.end(), ext.root_vertex) - loop.begin());
            descriptor = mixed_boundary(static_cast<std::int32_t>(ext.l), static_cast<std::int32_t>(ext.k + 1));
        } else {
            rot = static_cast<std::int32_t>(rng.below(L));
            descriptor = all_black(L);
        }
        Fill f = sample_fill(L, descriptor, params.p_c, z, rng);
        const std::int32_t V = f.graph.num_vertices();
        std::vector<std::int32_t> id(V, -1);
        for (std::int32_t i = 0; i < L; ++i) {
            const std::int32_t lv = loop[(rot + i) % L];
            if (gid[lv] >= 0 && f.cmap.color[i] != Color::black) {
                throw std::logic_error("boundary descriptor disagrees with the looptree colouring");
            }
            id[i] = gid[lv];
        }
        for (std::int32_t v = L; v < V; ++v) {
            if (f.cmap.color[v] == Color::black) {
                id[v] = n++;
                prov.push_back(Provenance::internal);
                face.push_back(static_cast<std::int32_t>(li));
            }
        }
        for (auto [u, v] : f.graph.edge_list()) {
            if (id[u] >= 0 && id[v] >= 0) edges.emplace_back(id[u], id[v]);
        }
        const std::int64_t time = ts.label(ext.loop_star.white_of_loop[li]) - ext.offset;
        if (is_root) {
            std::vector<Color> counterfactual = f.cmap.color;
            std::fill(counterfactual.begin(), counterfactual.begin() + L, Color::black);
            const auto all = black_component(f.graph, counterfactual, iota_vec(L));
            const auto actual = black_component(f.graph, f.cmap.color, {0});
            c.root_face_all_black_internal = internal_in(all, L);
            c.root_face_internal = internal_in(actual, L);
            c.xi[time] = static_cast<std::int64_t>(all.size()) - 1;
        } else {
            const auto comp = black_component(f.graph, f.cmap.color, iota_vec(L));
            c.xi[time] = static_cast<std::int64_t>(comp.size()) - 1;
        }
    }
    c.prepruning_black = n;

    // prune: breadth-first search from the root over black vertices
    const Graph pre = Graph::from_edges(n, std::move(edges));
    const std::int32_t root_pre = gid[ext.root_vertex];
    std::vector<std::int32_t> keep(n, -1), order{root_pre};
    keep[root_pre] = 0;
    for (std::size_t i = 0; i < order.size(); ++i) {
        for (auto v : pre.neighbors(order[i])) {
            if (keep[v] < 0) {
                keep[v] = static_cast<std::int32_t>(order.size());
                order.push_back(v);
            }
        }
    }
    std::vector<std::pair<std::int32_t, std::int32_t>> kept;
    for (auto [u, v] : pre.edge_list()) {
        if (keep[u] >= 0 && keep[v] >= 0) kept.emplace_back(keep[u], keep[v]);
    }
    c.graph = Graph::from_edges(static_cast<std::int32_t>(order.size()), std::move(kept));
    c.root = 0;
    c.provenance.resize(order.size());
    c.face.resize(order.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
        c.provenance[i] = prov[order[i]];
        c.face[i] = face[order[i]];
    }
    c.vertex_of_time.assign(tau + 1, 0);
    const auto& cls = ext.tree_star.class_of_time;
    const auto& lv_of = ext.loop_star.loop_vertex_of_tree_vertex;
    for (std::int64_t t = 0; t < tau; ++t) {
        const std::int32_t g = gid[lv_of[cls[ext.offset + t]]];
        c.vertex_of_time[t] = keep[g];
    }
    c.vertex_of_time[tau] = c.root;
    return c;
}

VolumeDecomposition volume_decomposition(const Cluster& c) {
    VolumeDecomposition d;
    d.xi = c.xi;
    for (auto x : c.xi) d.sum_xi += x;
    d.delta = c.k + c.root_face_all_black_internal - c.root_face_internal;
    d.cluster_size = d.sum_xi - d.delta;
    return d;
}

RootStructure decompose_root_structure(const LatticePath& path) {
    if (path.kind != PathKind::peeling) throw ValidationError("root structure needs a peeling excursion");
    validate(path);
    RootStructure r;
    const auto& z = path.z;
    const std::int64_t tau = path.length();
    r.l = z[tau - 1];
    r.k = -z[tau];
    r.loop_size = r.l + r.k + 1;
    // g[j]: last time in [-1, tau-1] at level j, with Z_{-1} = 0
    std::vector<std::int64_t> g(r.l + 1, -1);
    for (std::int64_t t = 0; t < tau; ++t) {
        if (z[t] <= r.l) g[z[t]] = t;
    }
    g[r.l] = tau - 1;
    r.gamma.resize(r.l);
    std::int64_t best = -1;
    for (std::int64_t i = 1; i <= r.l; ++i) {
        r.gamma[i - 1] = g[r.l - i + 1] - g[r.l - i];
        if (r.gamma[i - 1] > best) {
            best = r.gamma[i - 1];
            r.i_max = i;
        }
    }
    std::int64_t sum = 0;
    for (auto x : r.gamma) sum += x;
    if (sum != tau) throw std::logic_error("sub-excursion lengths do not sum to tau");
    return r;
}

ConditionedCluster sample_cluster_conditioned(std::int64_t n, ConditioningMode mode, const ModelParams& params,
                                              const PartitionFunction& z, Rng& rng,
                                              const ConditioningOptions& opts) {
    if (n < 1) throw DomainError("conditioning size n must be >= 1");
    const StepLaw law(params);
    ConditionedCluster out;
    if (mode == ConditioningMode::tau_ge_beta_n) {
        if (!(opts.beta > 0.0)) throw DomainError("tau conditioning needs a positive beta estimate");
        const auto threshold = static_cast<std::int64_t>(std::ceil(opts.beta * static_cast<double>(n)));
        ConditionedPath cp = sample_conditioned_excursion(law, threshold, rng, opts.max_length, opts.caps);
        out.rejections = cp.rejections;
        out.cluster = build_cluster(cp.path, params, z, rng);
        out.tau_event = true;
        out.size_event = out.cluster.size() >= n;
        return out;
    }
    const std::int64_t limit = opts.max_length > 0 ? opts.max_length : opts.caps.steps;
    while (true) {
        LatticePath p;
        p.kind = PathKind::peeling;
        p.z.push_back(1);
        std::int64_t x = 1;
        while (x >= 1 && p.length() < limit) {
            x += law.sample(rng);
            p.z.push_back(x);
        }
        if (x >= 1) {
            if (opts.max_length <= 0) throw CapExceeded("step cap exceeded in size-conditioned sampling");
        } else {
            Cluster c = build_cluster(p, params, z, rng);
            if (c.size() >= n) {
                out.cluster = std::move(c);
                out.size_event = true;
                out.tau_event = opts.beta > 0.0 && static_cast<double>(p.length()) >= opts.beta * static_cast<double>(n);
                return out;
            }
        }
        if (++out.rejections > opts.caps.rejections) throw CapExceeded("rejection cap exceeded in size conditioning");
    }
}

StreamedVolume streamed_cluster_volume(const StepLaw& law, const ModelParams& params, const PartitionFunction& z,
                                       Rng& rng, std::int64_t censor, std::int64_t tau_threshold,
                                       std::int64_t step_cap) {
    StreamedVolume out;
    std::int64_t x = 1;
    std::int64_t t = 0;
    std::int64_t lower = 1;  // root plus completed non-root decorations
    while (true) {
        if (censor > 0 && lower >= censor && t >= tau_threshold) {
            out.size = censor;
            out.censored = true;
            out.tau = t;
            out.reached_tau_threshold = true;
            return out;
        }
        if (t >= step_cap) throw CapExceeded("step cap exceeded in streamed volume");
        const std::int64_t s = law.sample(rng);
        ++t;
        if (s == 1) {
            ++x;
            continue;
        }
        const std::int64_t next = x + s;
        if (next >= 1) {
            const std::int32_t L = static_cast<std::int32_t>(-s + 1);
            Fill f = sample_fill(L, all_black(L), params.p_c, z, rng);
            const auto comp = black_component(f.graph, f.cmap.color, iota_vec(L));
            lower += static_cast<std::int64_t>(comp.size()) - 1;
            x = next;
            continue;
        }
        const std::int64_t l = x, k = -next;
        const auto L = static_cast<std::int32_t>(l + k + 1);
        Fill f = sample_fill(L, mixed_boundary(static_cast<std::int32_t>(l), static_cast<std::int32_t>(k + 1)),
                             params.p_c, z, rng);
        const auto actual = black_component(f.graph, f.cmap.color, {0});
        // the root is already counted in `lower`
        out.size = lower - 1 + l + internal_in(actual, L);
        out.tau = t;
        out.reached_tau_threshold = t >= tau_threshold;
        if (censor > 0 && out.size >= censor) {
            out.size = censor;
            out.censored = true;
        }
        return out;
    }
}

std::string path_digest(const LatticePath& path) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (auto v : path.z) {
        auto u = static_cast<std::uint64_t>(v);
        for (int b = 0; b < 8; ++b) {
            h ^= (u >> (8 * b)) & 0xffU;
            h *= 0x100000001b3ULL;
        }
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string cluster_to_json(const Cluster& c) {
    nlohmann::json j;
    j["n_vertices"] = c.size();
    j["n_edges"] = c.graph.num_edges();
    j["root"] = c.root;
    nlohmann::json adj = nlohmann::json::array();
    for (std::int32_t v = 0; v < c.size(); ++v) {
        const auto nb = c.graph.neighbors(v);
        adj.push_back(std::vector<std::int32_t>(nb.begin(), nb.end()));
    }
    j["adjacency"] = std::move(adj);
    std::vector<int> prov;
    prov.reserve(c.provenance.size());
    for (auto p : c.provenance) prov.push_back(static_cast<int>(p));
    j["provenance"] = std::move(prov);
    j["source_path_digest"] = path_digest(c.source);
    return j.dump();
}

}  // namespace percolab
