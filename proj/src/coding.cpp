#include "percolab/coding.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "percolab/errors.hpp"

namespace percolab {

std::int32_t TwoTypeTree::add_root() {
    const std::int32_t v = add_detached(0);
    root_ = v;
    return v;
}

std::int32_t TwoTypeTree::add_detached(std::int32_t depth_hint) {
    const auto v = static_cast<std::int32_t>(parent_.size());
    parent_.push_back(none);
    first_child_.push_back(none);
    last_child_.push_back(none);
    next_sibling_.push_back(none);
    num_children_.push_back(0);
    depth_.push_back(depth_hint);
    return v;
}

void TwoTypeTree::append_child(std::int32_t parent, std::int32_t child) {
    parent_[child] = parent;
    if (last_child_[parent] == none) {
        first_child_[parent] = child;
    } else {
        next_sibling_[last_child_[parent]] = child;
    }
    last_child_[parent] = child;
    ++num_children_[parent];
    depth_[child] = depth_[parent] + 1;
}

std::int32_t TwoTypeTree::add_child(std::int32_t parent) {
    const std::int32_t v = add_detached(0);
    append_child(parent, v);
    return v;
}

std::vector<std::int32_t> TwoTypeTree::children(std::int32_t v) const {
    std::vector<std::int32_t> out;
    out.reserve(num_children_[v]);
    for (std::int32_t c = first_child_[v]; c != none; c = next_sibling_[c]) out.push_back(c);
    return out;
}

std::int32_t TwoTypeTree::depth(std::int32_t v) const { return depth_[v]; }

std::int32_t TwoTypeTree::height() const {
    std::int32_t h = 0;
    for (auto d : depth_) h = std::max(h, d);
    return h;
}

std::int32_t TwoTypeTree::num_black() const {
    std::int32_t c = 0;
    for (auto d : depth_) c += (d % 2 == 0);
    return c;
}

void TwoTypeTree::finalize() {
    if (root_ == none) return;
    std::vector<std::int32_t> stack{root_};
    depth_[root_] = 0;
    while (!stack.empty()) {
        const std::int32_t v = stack.back();
        stack.pop_back();
        for (std::int32_t c = first_child_[v]; c != none; c = next_sibling_[c]) {
            depth_[c] = depth_[v] + 1;
            stack.push_back(c);
        }
    }
}

bool TwoTypeTree::has_white_leaf() const {
    for (std::int32_t v = 0; v < size(); ++v) {
        if (!is_black(v) && num_children_[v] == 0) return true;
    }
    return false;
}

void TwoTypeTree::assign_coding_labels() {
    label_.assign(parent_.size(), -1);
    std::int64_t next = 0;
    // contour: (vertex, child cursor)
    std::vector<std::pair<std::int32_t, std::int32_t>> stack;
    stack.emplace_back(root_, first_child_[root_]);
    label_[root_] = next++;
    while (!stack.empty()) {
        auto& [v, c] = stack.back();
        if (c == none) {
            if (!is_black(v)) label_[v] = next++;
            stack.pop_back();
            continue;
        }
        const std::int32_t child = c;
        c = next_sibling_[child];
        if (is_black(child)) label_[child] = next++;
        stack.emplace_back(child, first_child_[child]);
    }
}

std::vector<std::pair<std::int32_t, std::int32_t>> Looptree::edges() const {
    std::vector<std::pair<std::int32_t, std::int32_t>> out;
    for (const auto& loop : loops) {
        const std::size_t L = loop.size();
        for (std::size_t i = 0; i < L; ++i) out.emplace_back(loop[i], loop[(i + 1) % L]);
    }
    return out;
}

ExcursionTree tree_from_excursion(const LatticePath& path) {
    if (path.kind != PathKind::tree) throw ValidationError("tree_from_excursion needs a tree excursion");
    validate(path);
    const auto& z = path.z;
    const std::int64_t n = path.length();
    ExcursionTree out;
    TwoTypeTree& t = out.tree;
    out.class_of_time.assign(n + 1, TwoTypeTree::none);
    out.vertex_of_label.assign(n + 1, TwoTypeTree::none);
    std::vector<std::int64_t> labels;
    labels.reserve(n + 1);

    std::int64_t zmax = 1;
    for (auto v : z) zmax = std::max(zmax, v);
    // last[v]: black vertex whose class was most recently at value v
    std::vector<std::int32_t> last(zmax + 2, TwoTypeTree::none);
    const std::int32_t root = t.add_root();
    labels.push_back(0);
    last[1] = root;
    out.class_of_time[0] = root;
    out.vertex_of_label[0] = root;
    for (std::int64_t i = 1; i <= n; ++i) {
        const std::int64_t v = z[i - 1];
        const std::int64_t d = z[i] - v;
        if (d == 1) {
            const std::int32_t b = t.add_detached();
            labels.push_back(i);
            last[z[i]] = b;
            out.class_of_time[i] = b;
            out.vertex_of_label[i] = b;
        } else {
            const std::int64_t k = -d;
            const std::int32_t parent = last[v - k];
            const std::int32_t w = t.add_detached();
            labels.push_back(i);
            t.append_child(parent, w);
            for (std::int64_t h = v - k + 1; h <= v; ++h) {
                t.append_child(w, last[h]);
                last[h] = TwoTypeTree::none;
            }
            out.class_of_time[i] = parent;
            out.vertex_of_label[i] = w;
        }
    }
    t.finalize();
    t.set_labels(std::move(labels));
    return out;
}

LatticePath excursion_from_tree(const TwoTypeTree& tree) {
    if (tree.has_white_leaf()) throw ValidationError("tree has a white leaf");
    TwoTypeTree labelled = tree;
    labelled.assign_coding_labels();
    const std::int32_t n = tree.size() - 1;
    std::vector<std::int32_t> by_label(n + 1);
    for (std::int32_t v = 0; v <= n; ++v) by_label[labelled.label(v)] = v;
    LatticePath p;
    p.kind = PathKind::tree;
    p.z.resize(n + 1);
    p.z[0] = 1;
    for (std::int32_t i = 1; i <= n; ++i) {
        const std::int32_t v = by_label[i];
        p.z[i] = p.z[i - 1] + (tree.is_black(v) ? 1 : -tree.num_children(v));
    }
    return p;
}

LooptreeMap looptree_from_tree(const TwoTypeTree& tree) {
    if (tree.has_white_leaf()) throw ValidationError("tree has a white leaf");
    LooptreeMap out;
    Looptree& lt = out.looptree;
    out.loop_vertex_of_tree_vertex.assign(tree.size(), -1);
    for (std::int32_t v = 0; v < tree.size(); ++v) {
        if (!tree.is_black(v)) continue;
        out.loop_vertex_of_tree_vertex[v] = lt.num_vertices++;
        lt.vertex_label.push_back(tree.has_labels() ? tree.label(v) : v);
    }
    lt.root = out.loop_vertex_of_tree_vertex[tree.root()];
    for (std::int32_t w = 0; w < tree.size(); ++w) {
        if (tree.is_black(w)) continue;
        std::vector<std::int32_t> loop;
        loop.reserve(tree.num_children(w) + 1);
        loop.push_back(out.loop_vertex_of_tree_vertex[tree.parent(w)]);
        for (std::int32_t c = tree.first_child(w); c != TwoTypeTree::none; c = tree.next_sibling(c)) {
            loop.push_back(out.loop_vertex_of_tree_vertex[c]);
        }
        lt.loops.push_back(std::move(loop));
        out.white_of_loop.push_back(w);
    }
    return out;
}

QuotientGraph quotient_looptree(const LatticePath& path) {
    validate(path);
    const auto& z = path.z;
    const std::int64_t n = path.length();
    std::vector<std::int64_t> rep(n + 1);
    for (std::int64_t j = 0; j <= n; ++j) {
        rep[j] = j;
        std::int64_t mn = z[j];
        for (std::int64_t i = j; i >= 0; --i) {
            mn = std::min(mn, z[i]);
            if (z[i] == z[j] && mn == z[j]) rep[j] = i;
        }
    }
    QuotientGraph lt;
    std::vector<std::int32_t> id(n + 1, -1);
    for (std::int64_t j = 0; j <= n; ++j) {
        if (rep[j] == j) {
            id[j] = lt.num_vertices++;
            lt.vertex_label.push_back(j);
        }
    }
    lt.root = id[rep[0]];
    for (std::int64_t i = 1; i <= n; ++i) {
        lt.edges.emplace_back(id[rep[i - 1]], id[rep[i]]);
    }
    return lt;
}

ExtendedStructures extended_structures(const LatticePath& path) {
    if (path.kind != PathKind::peeling) throw ValidationError("extended structures need a peeling excursion");
    validate(path);
    ExtendedStructures out;
    const std::int64_t zt = path.back();
    out.l = path.z[path.z.size() - 2];
    out.k = -zt;
    // ramp Z_i = i + 1 for zt - 1 <= i <= -1, then the path; shift so it starts at 1
    const std::int64_t shift = 1 - zt;
    out.offset = 1 - zt;
    out.z_star.kind = PathKind::tree;
    out.z_star.z.reserve(path.z.size() + out.offset);
    for (std::int64_t i = zt - 1; i <= -1; ++i) out.z_star.z.push_back(i + 1 + shift);
    for (auto v : path.z) out.z_star.z.push_back(v + shift);
    out.tree_star = tree_from_excursion(out.z_star);
    out.loop_star = looptree_from_tree(out.tree_star.tree);
    const std::int32_t final_white = out.tree_star.vertex_of_label.back();
    const auto& wl = out.loop_star.white_of_loop;
    out.root_loop = static_cast<std::int32_t>(std::find(wl.begin(), wl.end(), final_white) - wl.begin());
    out.root_vertex = out.loop_star.loop_vertex_of_tree_vertex[out.tree_star.class_of_time[out.offset]];
    return out;
}

GwSample sample_two_type_gw(const OffspringLaws& laws, Rng& rng, std::int64_t size_cap) {
    GwSample out;
    TwoTypeTree& t = out.tree;
    t.add_root();
    // breadth-first: vertices are created in generation order
    for (std::int32_t v = 0; v < t.size(); ++v) {
        const std::int64_t k = t.is_black(v) ? laws.sample_bullet(rng) : laws.sample_circ(rng);
        if (t.size() + k > size_cap) {
            out.truncated = true;
            break;
        }
        for (std::int64_t j = 0; j < k; ++j) t.add_child(v);
    }
    return out;
}

KestenTree sample_kesten(const OffspringLaws& laws, std::int32_t h, Rng& rng) {
    if (h < 0) throw DomainError("Kesten tree height must be >= 0");
    KestenTree out;
    out.height = h;
    TwoTypeTree& t = out.tree;
    const std::int32_t root = t.add_root();
    out.spine.push_back(root);
    std::vector<char> special{1};
    for (std::int32_t v = 0; v < t.size(); ++v) {
        if (t.depth(v) >= h) continue;
        const bool black = t.is_black(v);
        std::int64_t k;
        if (special[v]) {
            k = black ? laws.sample_bullet_biased(rng) : laws.sample_circ_biased(rng);
        } else {
            k = black ? laws.sample_bullet(rng) : laws.sample_circ(rng);
        }
        const std::int64_t chosen = special[v] ? static_cast<std::int64_t>(rng.below(k)) : -1;
        for (std::int64_t j = 0; j < k; ++j) {
            const std::int32_t c = t.add_child(v);
            special.push_back(j == chosen);
            if (j == chosen) out.spine.push_back(c);
        }
    }
    return out;
}

Orderings orderings(const TwoTypeTree& tree) {
    Orderings o;
    std::vector<std::int32_t> stack{tree.root()};
    while (!stack.empty()) {
        const std::int32_t v = stack.back();
        stack.pop_back();
        o.depth_first.push_back(v);
        o.heights.push_back(tree.depth(v));
        const auto ch = tree.children(v);
        for (auto it = ch.rbegin(); it != ch.rend(); ++it) stack.push_back(*it);
    }
    TwoTypeTree labelled = tree;
    if (!labelled.has_labels()) labelled.assign_coding_labels();
    o.label_order.resize(tree.size());
    for (std::int32_t v = 0; v < tree.size(); ++v) o.label_order[labelled.label(v)] = v;
    return o;
}

TreeLogProbability tree_probability(const TwoTypeTree& tree, const OffspringLaws& laws) {
    TreeLogProbability r;
    for (std::int32_t v = 0; v < tree.size(); ++v) {
        const std::int32_t k = tree.num_children(v);
        if (tree.is_black(v)) {
            r.log_p += laws.log_bullet(k);
        } else if (k == 0) {
            r.structural_zero = true;
            r.log_p = -INFINITY;
            return r;
        } else {
            r.log_p += laws.log_circ(k);
        }
    }
    return r;
}

double excursion_log_probability(const LatticePath& path, const StepLaw& law) {
    if (path.kind != PathKind::tree) throw ValidationError("expected a tree excursion");
    double lp = std::log(law.up());
    for (std::size_t i = 1; i < path.z.size(); ++i) lp += law.log_prob(path.z[i] - path.z[i - 1]);
    return lp;
}

}  // namespace percolab
