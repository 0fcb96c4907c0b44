#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "percolab/excursions.hpp"
#include "percolab/model.hpp"
#include "percolab/rng.hpp"

namespace percolab {

/// Plane tree with alternating types: black at even depth, white at odd depth.
/// Children are kept in plane order through first-child/next-sibling links.
class TwoTypeTree {
public:
    static constexpr std::int32_t none = -1;

    std::int32_t add_root();
    std::int32_t add_child(std::int32_t parent);
    /// Adds a vertex whose parent is attached later with set_parent.
    std::int32_t add_detached(std::int32_t depth_hint = 0);
    void append_child(std::int32_t parent, std::int32_t child);

    std::int32_t size() const { return static_cast<std::int32_t>(parent_.size()); }
    std::int32_t root() const { return root_; }
    std::int32_t parent(std::int32_t v) const { return parent_[v]; }
    std::int32_t first_child(std::int32_t v) const { return first_child_[v]; }
    std::int32_t next_sibling(std::int32_t v) const { return next_sibling_[v]; }
    std::int32_t num_children(std::int32_t v) const { return num_children_[v]; }
    std::vector<std::int32_t> children(std::int32_t v) const;
    bool is_black(std::int32_t v) const { return depth(v) % 2 == 0; }
    std::int32_t depth(std::int32_t v) const;
    std::int32_t height() const;
    std::int32_t num_black() const;

    bool has_labels() const { return !label_.empty(); }
    std::int64_t label(std::int32_t v) const { return label_[v]; }
    void set_labels(std::vector<std::int64_t> labels) { label_ = std::move(labels); }
    /// Recomputes coding labels: black on first visit, white on last visit of the contour.
    void assign_coding_labels();

    bool has_white_leaf() const;
    /// Depths are cached after the tree is complete.
    void finalize();

private:
    std::vector<std::int32_t> parent_;
    std::vector<std::int32_t> first_child_;
    std::vector<std::int32_t> last_child_;
    std::vector<std::int32_t> next_sibling_;
    std::vector<std::int32_t> num_children_;
    std::vector<std::int32_t> depth_;
    std::vector<std::int64_t> label_;
    std::int32_t root_ = none;
};

struct Looptree {
    std::int32_t num_vertices = 0;
    std::int32_t root = 0;
    /// One loop per white vertex: its parent followed by its children in plane order.
    std::vector<std::vector<std::int32_t>> loops;
    /// Coding label of each loop vertex.
    std::vector<std::int64_t> vertex_label;
    bool extended = false;

    /// Loop edges with multiplicity (a loop of length 2 is a double edge).
    std::vector<std::pair<std::int32_t, std::int32_t>> edges() const;
};

struct ExcursionTree {
    TwoTypeTree tree;
    /// Tree vertex holding the class of each time 0..n (black vertices only).
    std::vector<std::int32_t> class_of_time;
    /// Tree vertex carrying each label.
    std::vector<std::int32_t> vertex_of_label;
};

ExcursionTree tree_from_excursion(const LatticePath& path);
LatticePath excursion_from_tree(const TwoTypeTree& tree);

struct LooptreeMap {
    Looptree looptree;
    std::vector<std::int32_t> loop_vertex_of_tree_vertex;  // -1 for white vertices
    std::vector<std::int32_t> white_of_loop;                // tree vertex of each loop
};

LooptreeMap looptree_from_tree(const TwoTypeTree& tree);

struct QuotientGraph {
    std::int32_t num_vertices = 0;
    std::int32_t root = 0;
    std::vector<std::int64_t> vertex_label;  // smallest time in each class
    std::vector<std::pair<std::int32_t, std::int32_t>> edges;
};

/// Quotient of {0..n} by i ~ j iff Z_i = Z_j = min Z over [i, j], with edges {i-1, i}.
/// Quadratic time; used as an oracle.
QuotientGraph quotient_looptree(const LatticePath& path);

struct ExtendedStructures {
    LatticePath z_star;       // ramp then path, shifted to start at 1
    std::int64_t offset = 0;  // index of time 0 in z_star
    ExcursionTree tree_star;
    LooptreeMap loop_star;
    std::int32_t root_loop = -1;     // index of the root loop in loop_star.looptree.loops
    std::int32_t root_vertex = -1;   // loop vertex of time 0
    std::int64_t l = 0;              // Z_{tau-1}
    std::int64_t k = 0;              // -Z_tau
    std::int64_t root_loop_size() const { return l + k + 1; }
};

ExtendedStructures extended_structures(const LatticePath& path);

struct GwSample {
    TwoTypeTree tree;
    bool truncated = false;
};

GwSample sample_two_type_gw(const OffspringLaws& laws, Rng& rng, std::int64_t size_cap = 10'000'000);

struct KestenTree {
    TwoTypeTree tree;
    std::vector<std::int32_t> spine;  // spine[g] is the special vertex at depth g
    std::int32_t height = 0;
};

KestenTree sample_kesten(const OffspringLaws& laws, std::int32_t h, Rng& rng);

struct Orderings {
    std::vector<std::int32_t> depth_first;  // vertices in depth-first order
    std::vector<std::int32_t> heights;      // H_i = depth of depth_first[i]
    std::vector<std::int32_t> label_order;  // vertices sorted by coding label
};

Orderings orderings(const TwoTypeTree& tree);

struct TreeLogProbability {
    double log_p = 0.0;
    bool structural_zero = false;
};

TreeLogProbability tree_probability(const TwoTypeTree& tree, const OffspringLaws& laws);

/// Probability of a tree excursion under the reversed walk, including its final step to 0.
double excursion_log_probability(const LatticePath& path, const StepLaw& law);

}  // namespace percolab
