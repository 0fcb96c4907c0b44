#include <algorithm>
#include <cmath>
#include <functional>
#include <set>

#include "doctest.h"
#include "json.hpp"
#include "percolab/cluster.hpp"
#include "percolab/errors.hpp"
#include "percolab/geometry.hpp"
#include "percolab/stats.hpp"

using namespace percolab;

namespace {

void tree_excursions(std::int64_t length, const std::function<void(const LatticePath&)>& visit) {
    LatticePath p{{1}, PathKind::tree};
    std::function<void()> rec = [&]() {
        const auto left = length - p.length();
        const auto v = p.z.back();
        if (left == 0) {
            if (v == 1) visit(p);
            return;
        }
        p.z.push_back(v + 1);
        rec();
        p.z.pop_back();
        for (std::int64_t k = 1; k < v; ++k) {
            p.z.push_back(v - k);
            rec();
            p.z.pop_back();
        }
    };
    rec();
}

const ModelParams params = ModelParams::from_alpha(0.8);

}  // namespace

TEST_CASE("unit-cycle decorations reproduce the looptree") {
    Rng rng(1);
    const UnitCycleFamily family;
    int trees = 0;
    for (std::int64_t n = 0; n <= 9; ++n) {
        tree_excursions(n, [&](const LatticePath& z) {
            ++trees;
            const TwoTypeTree t = tree_from_excursion(z).tree;
            const DecoratedGraph d = decorate_tree(t, family, rng);
            const LooptreeMap lm = looptree_from_tree(t);
            REQUIRE(d.graph.num_vertices() == lm.looptree.num_vertices);
            std::set<std::pair<std::int32_t, std::int32_t>> expected, got;
            for (auto [a, b] : lm.looptree.edges()) {
                if (a == b) continue;
                std::int32_t x = -1, y = -1;
                for (std::int32_t v = 0; v < t.size(); ++v) {
                    if (lm.loop_vertex_of_tree_vertex[v] == a) x = d.vertex_of_black[v];
                    if (lm.loop_vertex_of_tree_vertex[v] == b) y = d.vertex_of_black[v];
                }
                expected.emplace(std::min(x, y), std::max(x, y));
            }
            for (auto [a, b] : d.graph.edge_list()) got.emplace(std::min(a, b), std::max(a, b));
            CHECK(got == expected);
        });
    }
    CHECK(trees == 1 + 0 + 1 + 1 + 3 + 6 + 15 + 36 + 91 + 232);
}

TEST_CASE("single-vertex decoration") {
    Rng rng(2);
    TwoTypeTree t;
    t.add_root();
    t.finalize();
    const DecoratedGraph d = decorate_tree(t, UnitCycleFamily{}, rng);
    CHECK(d.graph.num_vertices() == 1);
    CHECK(d.counting == std::vector<double>{0.0});
}

TEST_CASE("decoration families") {
    Rng rng(3);
    const UnitCycleFamily cycles;
    const Decoration two = cycles.sample(2, rng);
    CHECK(two.graph.num_edges() == 1);
    CHECK(decoration_mass(two).counting == 1);
    const PercolatedBoltzmannFamily fam(params);
    for (std::int32_t L = 2; L <= 8; ++L) {
        const Decoration d = fam.sample(L, rng);
        CHECK(static_cast<std::int32_t>(d.boundary.size()) == L);
        for (std::int32_t i = 0; i < L; ++i) CHECK(d.boundary[i] == i);
        const auto bfs = bfs_distances(d.graph, 0);
        for (auto x : bfs) CHECK(x >= 0);
    }
    CHECK_THROWS_AS(fam.sample(1, rng), DomainError);
}

TEST_CASE("root structure") {
    const RootStructure a = decompose_root_structure({{1, 0}, PathKind::peeling});
    CHECK(a.l == 1);
    CHECK(a.k == 0);
    CHECK(a.loop_size == 2);
    CHECK(a.gamma.size() == 1);
    const RootStructure b = decompose_root_structure({{1, 2, -1}, PathKind::peeling});
    CHECK(b.l == 2);
    CHECK(b.k == 1);
    CHECK(b.loop_size == 4);
    CHECK(b.gamma.size() == 2);
    CHECK(b.i_max >= 1);
}

TEST_CASE("cluster construction") {
    const PartitionFunction z(params.q);
    Rng rng(4);
    for (int i = 0; i < 50; ++i) {
        const Cluster c = build_cluster({{1, 0}, PathKind::peeling}, params, z, rng);
        CHECK(c.root_loop_size() == 2);
        CHECK(c.size() >= 1);
        CHECK(c.root == 0);
    }
    const StepLaw law(params);
    for (int i = 0; i < 200; ++i) {
        LatticePath p;
        try {
            p = sample_excursion(law, rng, 20000);
        } catch (const CapExceeded&) {
            continue;
        }
        const Cluster c = build_cluster(p, params, z, rng);
        const auto d = bfs_distances(c.graph, c.root);
        for (auto x : d) REQUIRE(x >= 0);
        const VolumeDecomposition v = volume_decomposition(c);
        CHECK(v.cluster_size == c.size());
        CHECK(v.sum_xi - v.delta == c.size());
        for (std::size_t t = 0; t < c.vertex_of_time.size(); ++t) CHECK(c.vertex_of_time[t] < c.size());
        CHECK(c.vertex_of_time.back() == c.root);
    }
}

TEST_CASE("cluster json export") {
    const PartitionFunction z(params.q);
    Rng rng(5);
    const Cluster c = build_cluster({{1, 2, -1}, PathKind::peeling}, params, z, rng);
    const auto j = nlohmann::json::parse(cluster_to_json(c));
    for (const char* key : {"n_vertices", "n_edges", "root", "adjacency", "provenance", "source_path_digest"}) {
        CHECK(j.contains(key));
    }
    CHECK(j["n_vertices"] == c.size());
    CHECK(j["source_path_digest"] == path_digest(c.source));
    CHECK(path_digest({{1, 0}, PathKind::peeling}) != path_digest({{1, -1}, PathKind::peeling}));
}

TEST_CASE("streamed volume and conditioning") {
    const PartitionFunction z(params.q);
    const StepLaw law(params);
    Rng rng(6);
    const StreamedVolume s = streamed_cluster_volume(law, params, z, rng, 10);
    CHECK(s.size >= 1);
    CHECK(s.size <= 10);
    ConditioningOptions opt;
    const auto one = sample_cluster_conditioned(1, ConditioningMode::size_ge_n, params, z, rng, opt);
    CHECK(one.rejections == 0);
    CHECK_THROWS_AS(sample_cluster_conditioned(10, ConditioningMode::tau_ge_beta_n, params, z, rng, opt),
                    DomainError);
    opt.caps.steps = 1000;
    CHECK_THROWS_AS(sample_cluster_conditioned(100000, ConditioningMode::size_ge_n, params, z, rng, opt),
                    CapExceeded);
}

TEST_CASE("volume per step matches the counting constant") {
    // E|C| / E[tau] against beta^-1 under tau-conditioning
    ScalingBudget b;
    b.beta_samples = 20000;
    b.chi_samples = 1000;
    b.sigma_trees = 1000;
    b.sigma_tree_size = 50;
    const auto sc = estimate_scaling_constants(params, b, 8);
    const PartitionFunction z(params.q);
    Rng rng(7);
    ConditioningOptions opt;
    opt.beta = sc.beta.value;
    opt.max_length = static_cast<std::int64_t>(std::ceil(16 * sc.beta.value * 2000));
    std::vector<double> size, tau;
    for (int i = 0; i < 150; ++i) {
        const auto cc = sample_cluster_conditioned(2000, ConditioningMode::tau_ge_beta_n, params, z, rng, opt);
        size.push_back(static_cast<double>(cc.cluster.size()));
        tau.push_back(static_cast<double>(cc.cluster.source.length()));
    }
    const double r = mean(size) / mean(tau);
    std::vector<double> resid(size.size());
    for (std::size_t i = 0; i < size.size(); ++i) resid[i] = (size[i] - r * tau[i]) / mean(tau);
    const double se = sample_sd(resid) / std::sqrt(static_cast<double>(size.size()));
    const double target = 1.0 / sc.beta.value;
    CHECK(std::abs(r - target) < 3.0 * std::hypot(se, target * sc.beta.stderr_ / sc.beta.value));
}
