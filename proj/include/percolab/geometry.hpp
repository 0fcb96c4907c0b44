#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "percolab/graph.hpp"

namespace percolab {

/// Breadth-first distances from a source set. Throws ValidationError naming an unreachable vertex.
std::vector<std::int32_t> graph_distance(const Graph& g, const std::vector<std::int32_t>& sources);
/// Breadth-first distances from one source, -1 where unreachable.
std::vector<std::int32_t> bfs_distances(const Graph& g, std::int32_t source);

/// Effective resistances to a fixed ground vertex with unit conductances. The reduced Laplacian
/// is factorised once (direct below `direct_limit` vertices, preconditioned conjugate gradient
/// above). Trees are answered by graph distance.
class ResistanceSolver {
public:
    static constexpr std::int32_t direct_limit = 2000;
    static constexpr double tolerance = 1e-10;

    ResistanceSolver(const Graph& g, std::int32_t ground);
    ~ResistanceSolver();
    ResistanceSolver(ResistanceSolver&&) noexcept;
    ResistanceSolver& operator=(ResistanceSolver&&) noexcept;

    double to(std::int32_t v) const;
    bool iterative() const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

std::vector<double> effective_resistance(const Graph& g, const std::vector<std::pair<std::int32_t, std::int32_t>>& pairs);

/// Independent oracle through Kirchhoff's matrix-tree theorem (dense determinants, small graphs).
double kirchhoff_resistance(const Graph& g, std::int32_t u, std::int32_t v);

struct Measures {
    std::vector<double> counting;
    std::vector<double> degree;
};

Measures measures(const Graph& g);

/// Rooted finite metric measure space with a full distance matrix.
struct FiniteMetricMeasureSpace {
    std::int32_t n = 0;
    std::vector<double> d;     // row-major n x n
    std::vector<double> mass;
    std::int32_t root = 0;

    double dist(std::int32_t i, std::int32_t j) const { return d[static_cast<std::size_t>(i) * n + j]; }
    double diameter() const;
    double radius() const;  // largest distance from the root
    double total_mass() const;
    /// Symmetry, zero diagonal, non-negative masses, and the triangle inequality on `triples`
    /// random triples (all triples when triples < 0).
    void validate(std::int64_t triples = -1, std::uint64_t seed = 1) const;

    static FiniteMetricMeasureSpace from_graph(const Graph& g, std::int32_t root, const std::vector<double>& mass,
                                               double scale = 1.0);
    static FiniteMetricMeasureSpace point();
};

/// Pairs (x, y) with x in X and y in Y.
struct Correspondence {
    std::vector<std::pair<std::int32_t, std::int32_t>> pairs;
};

/// Throws ValidationError unless the pairs cover both point sets.
void check_covering(const Correspondence& r, const FiniteMetricMeasureSpace& x, const FiniteMetricMeasureSpace& y);
double distortion(const Correspondence& r, const FiniteMetricMeasureSpace& x, const FiniteMetricMeasureSpace& y);
/// Distortion of the relation without the covering requirement.
double relation_distortion(const std::vector<std::pair<std::int32_t, std::int32_t>>& pairs,
                           const FiniteMetricMeasureSpace& x, const FiniteMetricMeasureSpace& y);

struct GhBounds {
    double upper = 0.0;
    double lower = 0.0;
    std::optional<double> exact;
    Correspondence best;
};

constexpr std::int32_t gh_exact_limit = 6;

/// Pointed Gromov-Hausdorff bounds: upper from a greedy root-distance-profile correspondence,
/// lower from diameter and radius differences, exact by exhaustive search when requested and
/// both spaces have at most gh_exact_limit points.
GhBounds gh_bounds(const FiniteMetricMeasureSpace& x, const FiniteMetricMeasureSpace& y, bool exact = false);
/// Throws DomainError beyond gh_exact_limit points.
std::pair<double, Correspondence> gh_exact(const FiniteMetricMeasureSpace& x, const FiniteMetricMeasureSpace& y);

/// Prohorov distance between measures a on points 0..na-1 and b on points na..na+nb-1 of a joint
/// metric given row-major (closed fattening).
double prohorov_distance(const std::vector<double>& joint, const std::vector<double>& a, const std::vector<double>& b);
/// Whether a(A) <= b(A^eps) + eps and b(B) <= a(B^eps) + eps for all A, B, via max flow.
bool prohorov_feasible(const std::vector<double>& joint, const std::vector<double>& a, const std::vector<double>& b,
                       double eps);

struct GhpResult {
    double distortion = 0.0;
    double gh_upper = 0.0;
    double hausdorff = 0.0;
    double prohorov = 0.0;
    double root_term = 0.0;
    double ghp_upper = 0.0;
};

/// Embeds X and Y in their disjoint union with the metric induced by the correspondence
/// (offset dis/2) and sums the Hausdorff, Prohorov and root terms.
GhpResult ghp_upper(const FiniteMetricMeasureSpace& x, const FiniteMetricMeasureSpace& y, const Correspondence& r);

/// Pairs (vertex_of_time[floor(s * n)], j) for each sampled time s = times[j]; times beyond the
/// coded range pair with `root`. The root pair (root, root_index) is always included.
Correspondence coding_correspondence(const std::vector<std::int32_t>& vertex_of_time, double n,
                                     const std::vector<double>& times, std::int32_t root,
                                     std::int32_t root_index);

}  // namespace percolab
