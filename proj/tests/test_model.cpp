#include <cmath>

#include "doctest.h"
#include "percolab/cluster.hpp"
#include "percolab/errors.hpp"
#include "percolab/model.hpp"

using namespace percolab;

TEST_CASE("critical probability") {
    CHECK(critical_probability(0.8) == doctest::Approx(0.1464466094).epsilon(1e-10));
    CHECK(critical_probability(0.9) == doctest::Approx(0.5 * (1.0 - std::sqrt(7.0 / 9.0))).epsilon(1e-12));
    // sqrt(3 - 2/alpha) vanishes at 2/3, so p_c tends to 1/2 there and to 0 as alpha tends to 1
    CHECK(std::abs(critical_probability(2.0 / 3.0 + 1e-9) - 0.5) < 1e-4);
    CHECK(critical_probability(1.0 - 1e-9) < 1e-4);
    CHECK_THROWS_AS(critical_probability(0.5), DomainError);
    CHECK_THROWS_AS(critical_probability(1.0), DomainError);
}

TEST_CASE("peeling probabilities") {
    CHECK(peeling_probability(0.8, 1) == doctest::Approx(0.175).epsilon(1e-12));
    CHECK(peeling_probability(0.8, 2) == doctest::Approx(0.01875).epsilon(1e-12));
    CHECK_THROWS_AS(peeling_probability(0.8, 0), DomainError);
    double s = 0.0;
    for (int m = 1; m <= 50; ++m) s += peeling_probability(0.8, m);
    CHECK(std::abs(s - 0.2) < 1e-10);
    CHECK(boltzmann_weight(0.8) == doctest::Approx(0.064));
}

TEST_CASE("step law") {
    const StepLaw law(ModelParams::from_alpha(0.8));
    CHECK(law.up() == doctest::Approx(0.53950).epsilon(1e-5));
    CHECK(law.down(1) == doctest::Approx(0.40294).epsilon(1e-5));
    CHECK(law.prob(0) == 0.0);
    CHECK(law.prob(2) == 0.0);
    double prev = 0.0;
    for (int k = 1; k <= 200; ++k) {
        const double m = law.total_mass(k);
        CHECK(m >= prev);
        prev = m;
    }
    CHECK(law.total_mass(2000) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(law.mean(5000)) < 1e-10);
    Rng rng(3);
    double up = 0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) up += law.sample(rng) == 1;
    CHECK(std::abs(up / n - law.up()) < 4 * std::sqrt(law.up() * (1 - law.up()) / n));
}

TEST_CASE("offspring laws") {
    const OffspringLaws laws(ModelParams::from_alpha(0.8));
    CHECK(laws.circ(1) == doctest::Approx(0.875).epsilon(1e-12));
    CHECK(laws.bullet(0) == doctest::Approx(0.53950).epsilon(1e-5));
    CHECK(std::abs(laws.mean_bullet() * laws.mean_circ() - 1.0) < 1e-12);
    const double p = ModelParams::from_alpha(0.8).p_c;
    CHECK(laws.mean_circ() == doctest::Approx(2 * 0.8 * p / 0.2).epsilon(1e-12));
}

TEST_CASE("scaling constants: degree measure kappa and flags") {
    ScalingBudget b;
    b.beta_samples = 4000;
    b.chi_samples = 4000;
    b.sigma_trees = 1000;
    b.sigma_tree_size = 200;
    const auto c = estimate_scaling_constants(ModelParams::from_alpha(0.8), b, 7);
    CHECK(c.beta.value > 0.0);
    CHECK(c.kappa.value == doctest::Approx(c.beta.value / c.beta_degree.value).epsilon(1e-9));
    CHECK(c.theta.value == doctest::Approx(c.delta.value * c.gamma.value * c.kappa.value).epsilon(1e-9));
    b.beta_samples = 10;
    CHECK_THROWS_AS(estimate_scaling_constants(ModelParams::from_alpha(0.8), b, 7), DomainError);
}

TEST_CASE("unit-cycle family: chi_d matches direct summation") {
    // For cycles, eta_i is the distance between vertex 0 and a uniform vertex j in 1..i-1 of C_i.
    const ModelParams p = ModelParams::from_alpha(0.8);
    const OffspringLaws laws(p);
    double series = 0.0;
    for (int i = 1; i <= 3000; ++i) {
        const int len = i + 1;
        double eta = 0.0;
        for (int j = 1; j < len; ++j) eta += std::min(j, len - j);
        eta /= (len - 1);
        series += i * laws.circ(i) * eta;
    }
    const double expected = laws.mean_bullet() * series;
    ScalingBudget b;
    b.beta_samples = 2000;
    b.chi_samples = 100000;
    b.sigma_trees = 1000;
    b.sigma_tree_size = 100;
    const auto c = estimate_scaling_constants(p, b, 11, UnitCycleFamily{});
    CHECK(std::abs(c.chi_d.value - expected) < 3.0 * c.chi_d.stderr_ + 1e-12);
}
