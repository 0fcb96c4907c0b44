#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "percolab/coding.hpp"
#include "percolab/errors.hpp"

using namespace percolab;

namespace {

LatticePath tree_path(std::vector<std::int64_t> z) { return {std::move(z), PathKind::tree}; }

// root -> white w1 -> {b1, b2}; b1 -> white w2 -> {b3}
TwoTypeTree shape_fixture() {
    TwoTypeTree t;
    const auto r = t.add_root();
    const auto w1 = t.add_child(r);
    const auto b1 = t.add_child(w1);
    t.add_child(w1);
    const auto w2 = t.add_child(b1);
    t.add_child(w2);
    t.finalize();
    return t;
}

}  // namespace

TEST_CASE("tree from excursion") {
    const ExcursionTree single = tree_from_excursion(tree_path({1}));
    CHECK(single.tree.size() == 1);
    CHECK(single.tree.is_black(single.tree.root()));

    const ExcursionTree small = tree_from_excursion(tree_path({1, 2, 1}));
    const auto& t = small.tree;
    REQUIRE(t.size() == 3);
    REQUIRE(t.num_children(t.root()) == 1);
    const auto w = t.first_child(t.root());
    CHECK_FALSE(t.is_black(w));
    CHECK(t.num_children(w) == 1);

    CHECK_THROWS_AS(tree_from_excursion(tree_path({1, 2, 0})), ValidationError);
}

TEST_CASE("excursion from tree") {
    TwoTypeTree single;
    single.add_root();
    single.finalize();
    CHECK(excursion_from_tree(single).z == std::vector<std::int64_t>{1});

    const TwoTypeTree t = shape_fixture();
    const LatticePath z = excursion_from_tree(t);
    CHECK(z.z == std::vector<std::int64_t>{1, 2, 3, 2, 3, 1});
    CHECK(excursion_from_tree(tree_from_excursion(z).tree).z == z.z);

    TwoTypeTree leafy;
    leafy.add_child(leafy.add_root());
    leafy.finalize();
    CHECK(leafy.has_white_leaf());
    CHECK_THROWS_AS(excursion_from_tree(leafy), ValidationError);
}

TEST_CASE("looptrees") {
    TwoTypeTree one;
    const auto r = one.add_root();
    one.add_child(one.add_child(r));
    one.finalize();
    const Looptree two = looptree_from_tree(one).looptree;
    CHECK(two.num_vertices == 2);
    REQUIRE(two.loops.size() == 1);
    CHECK(two.loops[0].size() == 2);
    CHECK(two.edges().size() == 2);  // double edge

    TwoTypeTree tri;
    const auto w = tri.add_child(tri.add_root());
    tri.add_child(w);
    tri.add_child(w);
    tri.finalize();
    const Looptree three = looptree_from_tree(tri).looptree;
    CHECK(three.num_vertices == 3);
    CHECK(three.edges().size() == 3);

    const LooptreeMap fixture = looptree_from_tree(shape_fixture());
    CHECK(fixture.looptree.num_vertices == 4);
    CHECK(fixture.looptree.loops.size() == 2);
    CHECK_THROWS_AS(looptree_from_tree([] {
                        TwoTypeTree t;
                        t.add_child(t.add_root());
                        t.finalize();
                        return t;
                    }()),
                    ValidationError);
}

TEST_CASE("quotient looptree matches the tree construction") {
    const LatticePath z = excursion_from_tree(shape_fixture());
    const QuotientGraph q = quotient_looptree(z);
    CHECK(q.num_vertices == 4);
    CHECK(q.edges.size() == 5);  // triangle plus a double edge
}

TEST_CASE("extended structures root loop") {
    const ExtendedStructures a = extended_structures({{1, 0}, PathKind::peeling});
    CHECK(a.l == 1);
    CHECK(a.k == 0);
    CHECK(a.root_loop_size() == 2);
    const ExtendedStructures b = extended_structures({{1, -2}, PathKind::peeling});
    CHECK(b.l == 1);
    CHECK(b.k == 2);
    CHECK(b.root_loop_size() == 4);
    CHECK(b.loop_star.looptree.loops[b.root_loop].size() == 4);
}

TEST_CASE("orderings") {
    TwoTypeTree single;
    single.add_root();
    single.finalize();
    const Orderings o = orderings(single);
    CHECK(o.depth_first == std::vector<std::int32_t>{0});
    CHECK(o.heights == std::vector<std::int32_t>{0});

    TwoTypeTree chain;
    chain.add_child(chain.add_child(chain.add_root()));
    chain.finalize();
    const Orderings c = orderings(chain);
    CHECK(c.depth_first == std::vector<std::int32_t>{0, 1, 2});
    std::vector<std::int32_t> black_df;
    for (auto v : c.depth_first) if (chain.is_black(v)) black_df.push_back(v);
    std::vector<std::int32_t> black_label;
    for (auto v : c.label_order) if (chain.is_black(v)) black_label.push_back(v);
    CHECK(black_df == black_label);
}

TEST_CASE("tree probabilities") {
    const ModelParams p = ModelParams::from_alpha(0.8);
    const OffspringLaws laws(p);
    const StepLaw law(p);
    TwoTypeTree single;
    single.add_root();
    single.finalize();
    CHECK(tree_probability(single, laws).log_p == doctest::Approx(laws.log_bullet(0)));

    const TwoTypeTree t = shape_fixture();
    const auto tp = tree_probability(t, laws);
    CHECK_FALSE(tp.structural_zero);
    CHECK(std::isfinite(tp.log_p));
    CHECK(tp.log_p == doctest::Approx(excursion_log_probability(excursion_from_tree(t), law)).epsilon(1e-12));

    TwoTypeTree leafy;
    leafy.add_child(leafy.add_root());
    leafy.finalize();
    CHECK(tree_probability(leafy, laws).structural_zero);
}

TEST_CASE("two-type GW and Kesten trees") {
    const OffspringLaws laws(ModelParams::from_alpha(0.8));
    Rng rng(4);
    for (int i = 0; i < 200; ++i) {
        const GwSample s = sample_two_type_gw(laws, rng, 100000);
        if (!s.truncated) CHECK(s.tree.size() >= 1);
    }
    const KestenTree k0 = sample_kesten(laws, 0, rng);
    CHECK(k0.tree.size() == 1);
    CHECK(k0.spine.size() == 1);
    const KestenTree k = sample_kesten(laws, 6, rng);
    CHECK(k.spine.size() == 7);
    for (std::size_t g = 1; g < k.spine.size(); ++g) CHECK(k.tree.parent(k.spine[g]) == k.spine[g - 1]);
}
