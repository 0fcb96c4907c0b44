#pragma once

#include <cstdint>
#include <deque>
#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "percolab/graph.hpp"
#include "percolab/rng.hpp"

namespace percolab {

/// Triangulation of the m-gon stored as half-edges. Boundary vertices are 0..m-1 in boundary
/// order, internal vertices follow. Face 0 is the outer face; `root` is the outer half-edge
/// from boundary vertex 1 to boundary vertex 0.
struct PlanarTriangulationOfPolygon {
    std::int32_t m = 0;
    std::int32_t num_vertices = 0;
    std::vector<std::int32_t> origin;
    std::vector<std::int32_t> twin;
    std::vector<std::int32_t> next;
    std::vector<std::int32_t> face;
    std::int32_t root = 0;

    std::int32_t internal_count() const { return num_vertices - m; }
    std::int32_t num_half_edges() const { return static_cast<std::int32_t>(origin.size()); }
    std::int32_t dest(std::int32_t h) const { return origin[next[h]]; }
    std::int32_t num_faces() const;
    /// Simple graph underlying the map (parallel edges merged).
    Graph graph() const;
    /// Number of edges counted with multiplicity.
    std::int32_t num_edges() const { return num_half_edges() / 2; }
};

/// Throws ValidationError describing the first broken structural property.
void validate_triangulation(const PlanarTriangulationOfPolygon& map);

/// Root-anchored traversal code; equal codes iff root-preserving isomorphic.
std::vector<std::int32_t> canonical_code(const PlanarTriangulationOfPolygon& map);

struct Coefficient {
    std::int32_t m = 0;
    std::int32_t n = 0;
    unsigned __int128 count = 0;
};

/// Exact counts of rooted loopless triangulations of the m-gon with n internal vertices from the
/// root-edge decomposition. Returns table[m][n] for 2 <= m <= max_m, 0 <= n <= max_n.
std::vector<std::vector<unsigned __int128>> triangulation_counts(std::int32_t max_m, std::int32_t max_n);

/// Log of the closed-form count 2^{n+1}(2m'+1)!(2m'+3n)!/(m'!^2 n!(2m'+2n+2)!), m' = m-2.
double log_triangulation_count(std::int32_t m, std::int32_t n);

struct PartitionValue {
    double log_value = 0.0;
    double rel_error = 0.0;      // certified bound on the relative truncation error
    double mean_internal = 0.0;  // q d/dq log Z
    std::int64_t terms = 0;
};

/// Z_{m,q} = sum over triangulations of q^{#internal}; lazily extended table in m.
class PartitionFunction {
public:
    explicit PartitionFunction(double q);

    double q() const { return q_; }
    const PartitionValue& at(std::int32_t m) const;
    double log_z(std::int32_t m) const { return at(m).log_value; }

    static PartitionValue evaluate(std::int32_t m, double q);

private:
    double q_;
    mutable std::mutex mutex_;
    mutable std::deque<PartitionValue> table_;
};

struct EnumerationResult {
    std::int32_t m = 0;
    std::int32_t max_internal = 0;
    std::vector<PlanarTriangulationOfPolygon> maps;  // one per isomorphism class
    std::vector<std::int64_t> count_by_internal;     // distinct maps per #internal
    std::int64_t generated = 0;                      // constructions before deduplication
};

EnumerationResult enumerate_triangulations(std::int32_t m, std::int32_t max_internal);

PlanarTriangulationOfPolygon sample_boltzmann(std::int32_t m, const PartitionFunction& z, Rng& rng);

enum class Color : std::uint8_t { white = 0, black = 1 };

struct ColoredMap {
    PlanarTriangulationOfPolygon map;
    std::vector<Color> color;
    std::vector<Color> boundary;  // descriptor, in boundary order
};

std::vector<Color> all_black(std::int32_t m);
/// `black` black vertices starting at boundary vertex 0, followed by `white` white ones.
std::vector<Color> mixed_boundary(std::int32_t black, std::int32_t white);

ColoredMap percolate(PlanarTriangulationOfPolygon map, double p, std::vector<Color> boundary, Rng& rng);

/// Vertices joined to `sources` by black paths (sources must be black).
std::vector<std::int32_t> black_component(const Graph& g, const std::vector<Color>& color,
                                          const std::vector<std::int32_t>& sources);

std::string serialize_map(const PlanarTriangulationOfPolygon& map);
PlanarTriangulationOfPolygon parse_map(const std::string& text);

}  // namespace percolab
