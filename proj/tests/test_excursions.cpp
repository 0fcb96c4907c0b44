#include <cmath>
#include <functional>

#include "doctest.h"
#include "percolab/errors.hpp"
#include "percolab/excursions.hpp"

using namespace percolab;

namespace {

LatticePath peeling(std::vector<std::int64_t> z) { return {std::move(z), PathKind::peeling}; }

PeelingTrace trace(std::vector<std::int64_t> b) {
    PeelingTrace t;
    t.b = std::move(b);
    t.terminated = t.b.back() <= 0;
    return t;
}

}  // namespace

TEST_CASE("path validation") {
    CHECK(is_valid(peeling({1, 0})));
    CHECK(is_valid(peeling({1, 2, 1, -1})));
    CHECK_FALSE(is_valid(peeling({1, 3, 0})));
    CHECK_FALSE(is_valid(peeling({1, 0, 1})));
    CHECK_THROWS_WITH_AS(validate(peeling({1, 2, 4, 0})), doctest::Contains("2"), ValidationError);
    CHECK(is_valid({{1}, PathKind::tree}));
    CHECK(is_valid({{1, 2, 1}, PathKind::tree}));
    CHECK_FALSE(is_valid({{1, 2, 0}, PathKind::tree}));
}

TEST_CASE("excursion sampling") {
    const StepLaw law(ModelParams::from_alpha(0.8));
    Rng rng(5);
    for (int i = 0; i < 2000; ++i) {
        LatticePath p;
        try {
            p = sample_excursion(law, rng, 1'000'000);
        } catch (const CapExceeded&) {
            continue;
        }
        REQUIRE(is_valid(p));
        CHECK(p.z.back() <= 0);
        if (p.length() >= 1) CHECK(p.z[p.z.size() - 2] >= 1);
    }
    // tau = 1 exactly when the first step goes down
    int immediate = 0;
    Rng r2(6);
    for (int i = 0; i < 20000; ++i) {
        immediate += sample_tau(law, r2, 2) == 1;
    }
    CHECK(std::abs(immediate / 20000.0 - (1.0 - law.up())) < 0.015);  // any down step from 1 ends it
    CHECK_THROWS_AS(sample_excursion(law, rng, 0), CapExceeded);
}

TEST_CASE("conditioned excursions") {
    const StepLaw law(ModelParams::from_alpha(0.8));
    Rng rng(9);
    const auto one = sample_conditioned_excursion(law, 1, rng);
    CHECK(one.rejections == 0);
    for (int i = 0; i < 50; ++i) {
        const auto c = sample_conditioned_excursion(law, 100, rng, 400);
        CHECK(c.path.length() >= 100);
        CHECK(c.path.length() <= 400);
    }
    Caps caps;
    caps.rejections = 1;
    CHECK_THROWS_AS(sample_conditioned_excursion(law, 100000, rng, 0, caps), CapExceeded);
    const auto t = sample_tree_excursion(law, 50, rng, 200);
    CHECK(t.path.kind == PathKind::tree);
    CHECK(is_valid(t.path));
    CHECK(t.path.length() >= 50);
}

TEST_CASE("peeling contraction") {
    CHECK(contract_to_jumps(trace({1, 1, 1, 0})).z == std::vector<std::int64_t>{1, 0});
    CHECK(contract_to_jumps(trace({1, 2, 2, 1, -1})).z == std::vector<std::int64_t>{1, 2, 1, -1});
    CHECK_THROWS_AS(contract_to_jumps(trace({1, 2, 2})), ValidationError);
    CHECK(contract_to_jumps(trace({1, 2, 2}), true).z == std::vector<std::int64_t>{1, 2});
}

TEST_CASE("peeling event frequencies") {
    const ModelParams p = ModelParams::from_alpha(0.8);
    const OffspringLaws laws(p);
    Rng rng(12);
    const int n = 200000;
    double black = 0, white = 0, right1 = 0;
    for (int i = 0; i < n; ++i) {
        const PeelEvent e = sample_peel_event(laws, rng);
        black += e.type == PeelEventType::internal_black;
        white += e.type == PeelEventType::internal_white;
        right1 += e.type == PeelEventType::boundary_right && e.m == 1;
    }
    const auto near = [&](double count, double prob) {
        return std::abs(count / n - prob) < 3.0 * std::sqrt(prob * (1 - prob) / n) + 1e-12;
    };
    CHECK(near(black, p.alpha * p.p_c));
    CHECK(near(white, p.alpha * (1 - p.p_c)));
    CHECK(near(right1, peeling_probability(p.alpha, 1) / 2));
    const PeelingTrace t = simulate_peeling(p, rng);
    CHECK(t.terminated);
    CHECK(t.b.back() <= 0);
}

TEST_CASE("time reversal") {
    CHECK(reverse({{1}, PathKind::tree}).z == std::vector<std::int64_t>{1});
    CHECK(reverse({{1, 2, 1}, PathKind::tree}).z == std::vector<std::int64_t>{1, 2, 1});
    // exhaustive involution on tree excursions up to length 10
    int paths = 0;
    LatticePath p{{1}, PathKind::tree};
    std::function<void(int)> rec = [&](int left) {
        const auto v = p.z.back();
        if (left == 0 || v == 1) {
            if (v == 1) {
                ++paths;
                const LatticePath r = reverse(p);
                CHECK(r.kind == PathKind::reversed);
                CHECK(reverse(r).z == p.z);
            }
            if (left == 0) return;
        }
        p.z.push_back(v + 1);
        rec(left - 1);
        p.z.pop_back();
        for (std::int64_t k = 1; k < v; ++k) {
            p.z.push_back(v - k);
            rec(left - 1);
            p.z.pop_back();
        }
    };
    rec(10);
    CHECK(paths == 989);  // tree excursions of length <= 10
}

TEST_CASE("tail exponent estimator") {
    Rng rng(21);
    std::vector<double> pareto(200000);
    for (auto& x : pareto) x = 1.0 / std::pow(rng.uniform_pos(), 2.0);  // P(X > x) = x^-1/2
    const TailFit f = tail_exponent_estimate(pareto, 0.0, 10.0);
    CHECK(f.exponent == doctest::Approx(-0.5).epsilon(0.04));
    CHECK_THROWS_AS(tail_exponent_estimate(std::vector<double>(1000, 3.0)), DomainError);
    const StepLaw law(ModelParams::from_alpha(0.8));
    std::vector<double> tau(100000);
    for (auto& t : tau) t = static_cast<double>(sample_tau(law, rng, 20000));
    CHECK(std::abs(tail_exponent_estimate(tau, 20000, 10.0).exponent + 0.5) < 0.05);
}
