#include <cmath>
#include <map>

#include "doctest.h"
#include "percolab/continuum.hpp"
#include "percolab/dynamics.hpp"
#include "percolab/errors.hpp"
#include "percolab/excursions.hpp"
#include "percolab/geometry.hpp"
#include "percolab/stats.hpp"

using namespace percolab;

namespace {

std::vector<double> occupation(const WalkTrace& w, std::int32_t n) {
    std::vector<double> occ(n, 0.0);
    for (std::size_t i = 0; i + 1 < w.vertices.size(); ++i) occ[w.vertices[i]] += w.times[i + 1] - w.times[i];
    return occ;
}

}  // namespace

TEST_CASE("simple random walk") {
    CHECK_THROWS_AS(srw(Graph::from_edges(1, {}), 0, 10, Rng(1)), ValidationError);
    const WalkTrace two = srw(Graph::path(2), 0, 9, Rng(1));
    for (std::size_t i = 0; i < two.vertices.size(); ++i) CHECK(two.vertices[i] == static_cast<std::int32_t>(i % 2));
    const Graph c4 = Graph::cycle(4);
    const std::int64_t steps = 1'000'000;
    const WalkTrace w = srw(c4, 0, steps, Rng(2));
    // batch means give the standard error under the walk's periodicity
    const int batches = 100;
    const std::int64_t per = steps / batches;
    std::vector<std::vector<double>> frac(4, std::vector<double>(batches, 0.0));
    for (std::size_t i = 1; i < w.vertices.size(); ++i) {
        CHECK(c4.has_edge(w.vertices[i - 1], w.vertices[i]));
        const auto batch = std::min<std::int64_t>(batches - 1, static_cast<std::int64_t>(i - 1) / per);
        frac[w.vertices[i]][batch] += 1.0 / per;
    }
    for (const auto& f : frac) CHECK(std::abs(mean(f) - 0.25) < 3.0 * sample_sd(f) / std::sqrt(batches) + 1e-12);
    for (std::size_t i = 1; i < w.times.size(); ++i) CHECK(w.times[i] > w.times[i - 1]);
}

TEST_CASE("detailed balance on a small graph") {
    const Graph g = Graph::from_edges(5, {{0, 1}, {1, 2}, {2, 0}, {2, 3}, {3, 4}, {4, 2}});
    const std::int64_t steps = 400000;
    const WalkTrace w = srw(g, 0, steps, Rng(3));
    std::map<std::pair<int, int>, double> flow;
    for (std::size_t i = 1; i < w.vertices.size(); ++i) flow[{w.vertices[i - 1], w.vertices[i]}] += 1;
    for (auto [a, b] : g.edge_list()) {
        const double f = flow[{a, b}], r = flow[{b, a}];
        CHECK(std::abs(f - r) <= 3.0 * std::sqrt(f + r) + 2.0);
    }
}

TEST_CASE("continuous-time walk") {
    const Graph star = Graph::star(3);
    const WalkTrace d = srw(star, 0, 1000, Rng(4));
    const WalkTrace c = ctrw(star, 0, 2000.0, Rng(4));
    const std::size_t common = std::min(d.vertices.size(), c.vertices.size());
    for (std::size_t i = 0; i < common; ++i) REQUIRE(d.vertices[i] == c.vertices[i]);
    CHECK(c.continuous);
    const double horizon = 400000.0;
    const WalkTrace s = ctrw(star, 0, horizon, Rng(5));
    const auto occ = occupation(s, 4);
    const double total = occ[0] + occ[1] + occ[2] + occ[3];
    CHECK(std::abs(occ[0] / total - 0.5) < 3.0 * std::sqrt(0.25 / (horizon / 4)));
    const WalkTrace k = ctrw(Graph::complete(3), 0, horizon, Rng(6));
    const auto ok = occupation(k, 3);
    const double kt = ok[0] + ok[1] + ok[2];
    for (double o : ok) CHECK(std::abs(o / kt - 1.0 / 3.0) < 0.01);
}

TEST_CASE("spanned tree and CRT walks") {
    Rng rng(7);
    const auto e = sample_excursion_fixed_lifetime(2.0, 2.0 / 4096, rng);
    const DiscretizedCrt crt = crt_from_excursion(e, 2, rng);
    const SpannedTree t = spanned_tree(crt);
    // distances between points are preserved
    for (std::int32_t i = 0; i < crt.space.n; ++i) {
        const auto d = t.distances_from(t.node_of_point[i]);
        for (std::int32_t j = 0; j < crt.space.n; ++j) CHECK(d[t.node_of_point[j]] == doctest::Approx(crt.space.dist(i, j)).epsilon(1e-9));
    }
    // occupation is proportional to mass: the two sampled points share the time equally
    const WalkTrace w = walk_on_crt(t, t.node_of_point[0], 200000, rng);
    const auto occ = occupation(w, t.num_nodes);
    const double a = occ[t.node_of_point[1]], b = occ[t.node_of_point[2]];
    CHECK(a / (a + b) == doctest::Approx(0.5).epsilon(0.05));
    for (std::size_t i = 1; i < w.times.size(); ++i) CHECK(w.times[i] >= w.times[i - 1]);
    const auto droot = t.distances_from(t.node_of_point[0]);
    for (auto v : w.vertices) CHECK(droot[v] <= crt.space.diameter() + 1e-12);
}

TEST_CASE("hitting probabilities on a three-leaf spanned tree") {
    Rng rng(8);
    const auto e = sample_excursion_fixed_lifetime(2.0, 2.0 / 4096, rng);
    const DiscretizedCrt crt = crt_from_excursion(e, 3, rng);
    const SpannedTree t = spanned_tree(crt);
    const auto a = t.node_of_point[1], b = t.node_of_point[2];
    const auto start = t.node_of_point[3];
    const double dab = crt.space.dist(1, 2), dsa = crt.space.dist(3, 1), dsb = crt.space.dist(3, 2);
    if (dab < 1e-9 || dsa < 1e-9 || dsb < 1e-9) return;
    // resistance is distance on a tree; projection of the start onto the a-b geodesic
    const double to_a = (dsa + dab - dsb) / 2.0;
    const double expected = (dab - to_a) / dab;
    int hits_a = 0, runs = 4000;
    for (int r = 0; r < runs; ++r) {
        const WalkTrace w = walk_on_crt(t, start, 5000, rng);
        for (auto v : w.vertices) {
            if (v == a) { ++hits_a; break; }
            if (v == b) break;
        }
    }
    CHECK(std::abs(hits_a / static_cast<double>(runs) - expected) < 3.0 * std::sqrt(0.25 / runs));
}

TEST_CASE("displacement statistics") {
    // diffusive oracle on a long segment
    const std::int32_t len = 1000;
    const Graph seg = Graph::path(len);
    const std::int32_t mid = len / 2;
    std::vector<WalkTrace> traces;
    std::vector<std::vector<double>> dist;
    Rng rng(9);
    const auto d = bfs_distances(seg, mid);
    for (int i = 0; i < 300; ++i) {
        traces.push_back(srw(seg, mid, 5000, rng.split(i)));
        dist.emplace_back(d.begin(), d.end());
    }
    const DisplacementTable tab = displacement_stats(traces, dist, {10, 30, 100, 300, 1000, 3000}, rng);
    CHECK(tab.slope == doctest::Approx(0.5).epsilon(0.1));
    for (const auto& r : tab.rows) {
        CHECK(r.ci_low <= r.mean);
        CHECK(r.mean <= r.ci_high);
    }
    CHECK_THROWS(displacement_stats(traces, dist, {10000}, rng));
    std::vector<WalkTrace> few(traces.begin(), traces.begin() + 10);
    std::vector<std::vector<double>> few_d(dist.begin(), dist.begin() + 10);
    CHECK_THROWS(displacement_stats(few, few_d, {10}, rng));

    WalkEnsemble a{{traces.begin(), traces.begin() + 150}, {dist.begin(), dist.begin() + 150}, 4000.0, 1.0 / 60};
    WalkEnsemble b{{traces.begin() + 150, traces.end()}, {dist.begin() + 150, dist.end()}, 4000.0, 1.0 / 60};
    for (const auto& row : path_law_comparison(a, b)) CHECK(row.p_value > 0.01);
    b.time_scale = 0.0;
    CHECK_THROWS(path_law_comparison(a, b));
}

TEST_CASE("statistics helpers") {
    CHECK(kolmogorov_survival(0.0) == doctest::Approx(1.0));
    CHECK(kolmogorov_survival(1.36) == doctest::Approx(0.049).epsilon(0.02));
    const TestResult chi = chi_square_gof({50, 50}, {0.5, 0.5});
    CHECK(chi.statistic == 0.0);
    CHECK(chi.p_value == doctest::Approx(1.0));
    std::map<int, double> p{{0, 1.0}, {1, 1.0}}, q{{0, 1.0}};
    CHECK(total_variation(p, q) == doctest::Approx(0.5));
    const LinearFit f = least_squares({1, 2, 3}, {2, 4, 6});
    CHECK(f.slope == doctest::Approx(2.0));
    CHECK(median({3, 1, 2}) == 2.0);
    CHECK(quantile({0, 10}, 0.5) == doctest::Approx(5.0));
}
