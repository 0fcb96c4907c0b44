#include <cmath>

#include "doctest.h"
#include "percolab/errors.hpp"
#include "percolab/geometry.hpp"
#include "percolab/io.hpp"

using namespace percolab;

namespace {

FiniteMetricMeasureSpace space(std::int32_t n, std::vector<double> d, std::vector<double> mass = {}) {
    FiniteMetricMeasureSpace s;
    s.n = n;
    s.d = std::move(d);
    s.mass = mass.empty() ? std::vector<double>(n, 1.0 / n) : std::move(mass);
    return s;
}

FiniteMetricMeasureSpace two_points(double r) { return space(2, {0, r, r, 0}); }

Correspondence identity(std::int32_t n) {
    Correspondence c;
    for (std::int32_t i = 0; i < n; ++i) c.pairs.emplace_back(i, i);
    return c;
}

}  // namespace

TEST_CASE("graph distances") {
    const auto p = bfs_distances(Graph::path(3), 0);
    CHECK(p[2] == 2);
    CHECK(bfs_distances(Graph::cycle(4), 0)[2] == 2);
    const Graph split = Graph::from_edges(4, {{0, 1}, {2, 3}});
    CHECK(bfs_distances(split, 0)[2] == -1);
    CHECK_THROWS_WITH_AS(graph_distance(split, {0}), doctest::Contains("vertex 2"), ValidationError);
}

TEST_CASE("effective resistance fixtures") {
    CHECK(effective_resistance(Graph::cycle(4), {{0, 1}})[0] == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(effective_resistance(Graph::cycle(4), {{0, 2}})[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(effective_resistance(Graph::complete(3), {{1, 2}})[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    CHECK(kirchhoff_resistance(Graph::cycle(4), 0, 1) == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(effective_resistance(Graph::star(5), {{1, 2}})[0] == 2.0);
    CHECK(effective_resistance(Graph::cycle(5), {{3, 3}})[0] == 0.0);
}

TEST_CASE("iterative resistance on a large graph") {
    // grid-like ladder with 2 x 1500 vertices: above the direct limit
    const std::int32_t len = 1500;
    std::vector<std::pair<std::int32_t, std::int32_t>> e;
    for (std::int32_t i = 0; i < len; ++i) {
        e.emplace_back(i, i + len);
        if (i + 1 < len) {
            e.emplace_back(i, i + 1);
            e.emplace_back(i + len, i + 1 + len);
        }
    }
    const Graph g = Graph::from_edges(2 * len, e);
    const ResistanceSolver s(g, 0);
    CHECK(s.iterative());
    // rung resistance of an infinite ladder from its end: (sqrt(3) - 1)
    CHECK(s.to(len) == doctest::Approx(std::sqrt(3.0) - 1.0).epsilon(1e-6));
}

TEST_CASE("measures") {
    Graph single = Graph::from_edges(1, {});
    const Measures m1 = measures(single);
    CHECK(m1.counting == std::vector<double>{1.0});
    CHECK(m1.degree == std::vector<double>{0.0});
    const Measures c4 = measures(Graph::cycle(4));
    double total = 0.0;
    for (double w : c4.degree) {
        CHECK(w == 2.0);
        total += w;
    }
    CHECK(total == 8.0);
}

TEST_CASE("distortion") {
    const auto x = two_points(2.0);
    CHECK(distortion(identity(2), x, x) == 0.0);
    const auto pt = FiniteMetricMeasureSpace::point();
    Correspondence c{{{0, 0}, {1, 0}}};
    CHECK(distortion(c, x, pt) == 2.0);
    const double scale = 3.0;
    auto y = x;
    for (auto& v : y.d) v *= scale;
    CHECK(distortion(identity(2), x, y) == doctest::Approx((scale - 1.0) * x.diameter()));
    CHECK_THROWS_AS(distortion(Correspondence{{{0, 0}}}, x, x), ValidationError);
}

TEST_CASE("Gromov-Hausdorff bounds") {
    const auto x = two_points(2.0);
    const auto pt = FiniteMetricMeasureSpace::point();
    const GhBounds b = gh_bounds(x, pt, true);
    REQUIRE(b.exact.has_value());
    CHECK(*b.exact == doctest::Approx(1.0));
    CHECK(b.lower <= *b.exact + 1e-12);
    CHECK(b.upper >= *b.exact - 1e-12);
    CHECK(gh_bounds(x, x, true).exact.value() == 0.0);
    const auto big = FiniteMetricMeasureSpace::from_graph(Graph::path(8), 0, std::vector<double>(8, 1.0 / 8));
    CHECK_THROWS_WITH_AS(gh_exact(big, big), doctest::Contains("6"), DomainError);
    const GhBounds pb = gh_bounds(big, big);
    CHECK(pb.upper == 0.0);
}

TEST_CASE("Prohorov and GHP") {
    const std::vector<double> joint{0.0, 0.5, 0.5, 0.0};
    CHECK(prohorov_distance(joint, {1.0}, {1.0}) == doctest::Approx(0.5));
    CHECK(prohorov_distance({0.0, 2.0, 2.0, 0.0}, {1.0}, {1.0}) == doctest::Approx(1.0));
    const auto x = two_points(1.0);
    const GhpResult same = ghp_upper(x, x, identity(2));
    CHECK(same.ghp_upper == doctest::Approx(0.0));
    auto y = x;
    y.mass = {1.0, 0.0};
    const GhpResult moved = ghp_upper(x, y, identity(2));
    CHECK(moved.prohorov == doctest::Approx(0.5));
    CHECK(moved.ghp_upper >= moved.prohorov);
}

TEST_CASE("coding correspondence") {
    const auto pt = FiniteMetricMeasureSpace::point();
    const Correspondence c = coding_correspondence({0}, 1.0, {}, 0, 0);
    CHECK(distortion(c, pt, pt) == 0.0);
    CHECK_THROWS_AS(coding_correspondence({1, 0}, 1.0, {}, 0, 0), ValidationError);
    const Correspondence d = coding_correspondence({0, 1, 2, 0}, 3.0, {0.5, 2.0}, 0, 0);
    CHECK(d.pairs.size() == 3);
    CHECK(d.pairs[1].first == 1);
    CHECK(d.pairs[2].first == 0);  // beyond the coded range
}

TEST_CASE("space serialization") {
    const auto s = FiniteMetricMeasureSpace::from_graph(Graph::cycle(5), 2, std::vector<double>(5, 0.2), 0.5);
    const auto back = parse_space(serialize_space(s));
    CHECK(back.n == s.n);
    CHECK(back.root == 2);
    CHECK(back.d == s.d);
    CHECK(back.mass == s.mass);
    CHECK_THROWS_AS(parse_space("space 2 0\nmass 0.5 0.5\n0 1\n2 0\n"), ValidationError);
    s.validate();
}
