#pragma once

#include <cstdint>
#include <vector>

#include "percolab/continuum.hpp"
#include "percolab/graph.hpp"
#include "percolab/rng.hpp"

namespace percolab {

struct WalkTrace {
    std::vector<std::int32_t> vertices;
    std::vector<double> times;  // jump times; integers for the discrete walk
    std::int32_t start = 0;
    bool continuous = false;

    /// Position at time t (last jump at or before t).
    std::int32_t at(double t) const;
    double horizon() const { return times.empty() ? 0.0 : times.back(); }
};

/// Discrete-time simple random walk. Neighbour choices use rng.split(0).
WalkTrace srw(const Graph& g, std::int32_t start, std::int64_t steps, Rng rng);
/// Variable-speed walk with unit-mean exponential holding times. The jump chain uses
/// rng.split(0), exactly as srw, and holding times use rng.split(1).
WalkTrace ctrw(const Graph& g, std::int32_t start, double horizon, Rng rng);

/// Weighted tree spanned by the points of a discretized CRT: sampled points first (same indices
/// as the CRT space), then branch points. Zero-length edges are contracted.
struct SpannedTree {
    std::int32_t num_nodes = 0;
    std::vector<std::vector<std::pair<std::int32_t, double>>> adj;  // (neighbour, length)
    std::vector<double> mass;
    std::vector<std::int32_t> node_of_point;  // node of each CRT point after contraction

    std::vector<double> distances_from(std::int32_t node) const;
};

SpannedTree spanned_tree(const DiscretizedCrt& crt);

/// Jump chain with conductance 1/length and exponential holding of mean mass/conductance.
/// Mass-free branch points are left instantly, so stamps are only non-decreasing there.
WalkTrace walk_on_crt(const SpannedTree& tree, std::int32_t start, std::int64_t steps, Rng& rng);

struct DisplacementRow {
    double t = 0.0;
    double mean = 0.0;
    double median = 0.0;
    double q10 = 0.0;
    double q90 = 0.0;
    double ci_low = 0.0;   // bootstrap 95% band for the mean
    double ci_high = 0.0;
};

struct DisplacementTable {
    std::vector<DisplacementRow> rows;
    double slope = 0.0;  // least squares slope of log mean against log t over positive t
    double slope_se = 0.0;
};

/// dist[i][v] is the distance of vertex v from the start of trace i.
DisplacementTable displacement_stats(const std::vector<WalkTrace>& traces,
                                     const std::vector<std::vector<double>>& dist,
                                     const std::vector<double>& times, Rng& rng, std::int32_t bootstrap = 200);

struct WalkEnsemble {
    std::vector<WalkTrace> traces;
    std::vector<std::vector<double>> dist;
    double time_scale = 0.0;   // walk time per unit of rescaled time
    double space_scale = 0.0;  // multiplier turning distances into rescaled distances
};

struct KsRow {
    double t = 0.0;
    double statistic = 0.0;
    double p_value = 0.0;
};

/// Two-sample KS comparison of rescaled displacements at matched rescaled times.
std::vector<KsRow> path_law_comparison(const WalkEnsemble& a, const WalkEnsemble& b,
                                       const std::vector<double>& times = {0.25, 0.5, 1.0});

}  // namespace percolab
