#include <cmath>

#include "doctest.h"
#include "percolab/continuum.hpp"
#include "percolab/errors.hpp"
#include "percolab/excursions.hpp"
#include "percolab/stats.hpp"

using namespace percolab;

TEST_CASE("lifetime law") {
    Rng rng(1);
    const int n = 100000;
    std::vector<double> z(n);
    int above4 = 0;
    for (auto& x : z) {
        x = sample_lifetime(rng);
        CHECK(x >= 1.0);
        above4 += x >= 4.0;
    }
    CHECK(std::abs(above4 / static_cast<double>(n) - 0.5) < 3.0 * std::sqrt(0.25 / n));
    const TailFit f = tail_exponent_estimate(z, 1000.0, 1.0);
    CHECK(f.exponent == doctest::Approx(-0.5).epsilon(0.06));
}

TEST_CASE("excursion at fixed lifetime") {
    Rng rng(2);
    const auto e = sample_excursion_fixed_lifetime(2.0, 2.0 / 4096, rng);
    CHECK(e.values.front() == 0.0);
    CHECK(e.values.back() == 0.0);
    for (std::size_t i = 1; i + 1 < e.values.size(); ++i) CHECK(e.values[i] > 0.0);
    CHECK(e.at(0.0) == 0.0);
    CHECK(e.zeta == 2.0);
    CHECK_THROWS_AS(sample_excursion_fixed_lifetime(0.5, 0.001, rng), DomainError);
    CHECK_THROWS_AS(sample_excursion_fixed_lifetime(2.0, 0.5, rng), DomainError);
}

TEST_CASE("midpoint marginal matches the fixed-time excursion law") {
    Rng rng(3);
    const double zeta = 1.0;
    std::vector<double> mid(10000);
    // the default mesh keeps the discrete-minimum bias (about 0.58 sqrt(mesh)) below KS resolution
    for (auto& m : mid) m = sample_excursion_fixed_lifetime(zeta, zeta / default_mesh_divisions, rng).at(zeta / 2);
    const TestResult ks = ks_one_sample(mid, [&](double x) { return midpoint_cdf(x, zeta); });
    CHECK(ks.p_value > 0.01);
    CHECK(midpoint_cdf(0.0, zeta) == 0.0);
    CHECK(midpoint_cdf(50.0, zeta) == doctest::Approx(1.0));
}

TEST_CASE("range minimum") {
    const std::vector<double> v{3, 1, 4, 1, 5, 9, 2, 6};
    const RangeMin rm(v);
    CHECK(rm.query(0, 0) == 3);
    CHECK(rm.query(2, 2) == 4);
    CHECK(rm.query(4, 7) == 2);
    CHECK(rm.query(7, 4) == 2);
    CHECK(rm.query(0, 7) == 1);
}

TEST_CASE("discretized CRT") {
    Rng rng(4);
    const auto e = sample_excursion_fixed_lifetime(3.0, 3.0 / 2048, rng);
    const DiscretizedCrt crt = crt_from_excursion(e, 60, rng);
    CHECK(crt.space.n == 61);
    CHECK(crt.times[0] == 0.0);
    CHECK(crt.space.mass[0] == 0.0);
    CHECK(crt.space.total_mass() == doctest::Approx(3.0));
    for (std::int32_t i = 0; i < crt.space.n; ++i) CHECK(crt.space.dist(0, i) == doctest::Approx(crt.heights[i]));
    CHECK_NOTHROW(crt.space.validate());
    const DiscretizedCrt fixed = crt_at_times(e, {1.0, 2.0});  // the root is prepended
    CHECK(fixed.space.dist(1, 2) == doctest::Approx(e.at(1.0) + e.at(2.0) - 2 * RangeMin(e.values).query(
                                                         static_cast<std::int64_t>(std::llround(1.0 / e.mesh)),
                                                         static_cast<std::int64_t>(std::llround(2.0 / e.mesh)))));
    CHECK_THROWS_AS(crt_from_excursion(e, 1, rng), DomainError);
}

TEST_CASE("re-rooting invariance of the distance profile") {
    Rng rng(5);
    std::vector<double> from_root, from_point;
    for (int i = 0; i < 3000; ++i) {
        const auto e = sample_excursion_fixed_lifetime(1.0, 1.0 / 512, rng);
        const DiscretizedCrt crt = crt_from_excursion(e, 3, rng);
        from_root.push_back(crt.space.dist(0, 1));
        from_point.push_back(crt.space.dist(2, 3));
    }
    CHECK(ks_two_sample(from_root, from_point).p_value > 0.01);
}
