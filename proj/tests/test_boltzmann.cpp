#include <cmath>
#include <map>

#include "doctest.h"
#include "percolab/boltzmann.hpp"
#include "percolab/errors.hpp"
#include "percolab/model.hpp"
#include "percolab/stats.hpp"

using namespace percolab;

TEST_CASE("enumeration fixtures") {
    CHECK(enumerate_triangulations(3, 0).maps.size() == 1);
    // frozen from the enumeration oracle
    const std::vector<std::vector<std::int64_t>> frozen{
        {1, 1, 4, 24}, {1, 4, 24, 176}, {2, 15, 120, 1040}, {5, 56, 560, 5600}};
    for (std::int32_t m = 2; m <= 5; ++m) {
        const EnumerationResult e = enumerate_triangulations(m, 3);
        CHECK(e.count_by_internal == frozen[m - 2]);
        for (const auto& map : e.maps) CHECK_NOTHROW(validate_triangulation(map));
    }
    const auto table = triangulation_counts(5, 3);
    for (std::int32_t m = 2; m <= 5; ++m) {
        for (std::int32_t n = 0; n <= 3; ++n) {
            CHECK(static_cast<std::int64_t>(table[m][n]) == frozen[m - 2][n]);
            CHECK(std::exp(log_triangulation_count(m, n)) == doctest::Approx(frozen[m - 2][n]).epsilon(1e-9));
        }
    }
}

TEST_CASE("partition function") {
    const double q = ModelParams::from_alpha(0.8).q;
    const PartitionFunction z(q);
    // direct series from the exact coefficients
    for (std::int32_t m = 2; m <= 4; ++m) {
        long double s = 0.0L;
        for (std::int32_t n = 0; n <= 400; ++n) s += std::exp(static_cast<long double>(log_triangulation_count(m, n)) + n * std::log(static_cast<long double>(q)));
        CHECK(z.log_z(m) == doctest::Approx(static_cast<double>(std::log(s))).epsilon(1e-10));
        CHECK(z.at(m).rel_error < 1e-12);
    }
    CHECK(z.log_z(3) == doctest::Approx(0.381748581490848).epsilon(1e-12));
    CHECK_THROWS_AS(PartitionFunction(0.1), DomainError);
    CHECK_THROWS_AS(PartitionFunction(-0.1), DomainError);
}

TEST_CASE("boltzmann sampler") {
    const PartitionFunction z(ModelParams::from_alpha(0.8).q);
    Rng rng(17);
    double internal = 0.0;
    const int n = 20000;
    for (int i = 0; i < n; ++i) {
        const auto map = sample_boltzmann(4, z, rng);
        REQUIRE(map.m == 4);
        internal += map.internal_count();
        if (i < 200) CHECK_NOTHROW(validate_triangulation(map));
    }
    CHECK(internal / n == doctest::Approx(z.at(4).mean_internal).epsilon(0.05));
}

TEST_CASE("canonical codes separate root-preserving classes") {
    const EnumerationResult e = enumerate_triangulations(4, 2);
    std::map<std::vector<std::int32_t>, int> seen;
    for (const auto& m : e.maps) ++seen[canonical_code(m)];
    CHECK(seen.size() == e.maps.size());
    for (const auto& m : e.maps) CHECK(canonical_code(parse_map(serialize_map(m))) == canonical_code(m));
}

TEST_CASE("percolation") {
    const PartitionFunction z(ModelParams::from_alpha(0.8).q);
    Rng rng(23);
    const auto map = sample_boltzmann(5, z, rng);
    const ColoredMap black = percolate(map, 1.0, all_black(5), rng);
    for (auto c : black.color) CHECK(c == Color::black);
    const ColoredMap white = percolate(map, 0.0, mixed_boundary(2, 3), rng);
    for (std::int32_t v = map.m; v < map.num_vertices; ++v) CHECK(white.color[v] == Color::white);
    CHECK(white.color[0] == Color::black);
    CHECK(white.color[1] == Color::black);
    CHECK(white.color[2] == Color::white);
    CHECK_THROWS_AS(percolate(map, 0.5, all_black(4), rng), ValidationError);
    const auto comp = black_component(black.map.graph(), black.color, {0});
    CHECK(static_cast<std::int32_t>(comp.size()) == map.num_vertices);
}
