#pragma once

#include <cstdint>
#include <vector>

#include "percolab/geometry.hpp"
#include "percolab/rng.hpp"

namespace percolab {

/// Lifetime of the excursion under N( . | zeta >= 1): zeta = U^-2, so P(zeta >= t) = t^-1/2.
double sample_lifetime(Rng& rng);

struct BrownianExcursionSample {
    double zeta = 0.0;
    double mesh = 0.0;
    std::vector<double> values;     // values[i] at time i * mesh, endpoints 0
    std::int32_t refinements = 0;   // mesh halvings after interior zeros
    std::int32_t violations = 0;    // interior zeros left after the last refinement
    std::int64_t min_index = 0;     // grid index of the bridge minimum before rotation

    double at(double t) const;
};

constexpr std::int64_t default_mesh_divisions = 1 << 14;

/// Gaussian bridge on [0, zeta] on a grid of mesh at most `mesh`, rotated at its minimum.
BrownianExcursionSample sample_excursion_fixed_lifetime(double zeta, double mesh, Rng& rng);

/// Range-minimum queries over a fixed array in O(1) after O(n log n) preprocessing.
class RangeMin {
public:
    explicit RangeMin(const std::vector<double>& values);
    double query(std::int64_t i, std::int64_t j) const;  // min over [min(i,j), max(i,j)]

private:
    std::vector<std::vector<double>> table_;
};

struct DiscretizedCrt {
    double zeta = 0.0;
    std::vector<double> times;          // point 0 is the root at time 0
    std::vector<std::int64_t> grid;     // grid index of each point
    std::vector<double> heights;        // excursion value at each point
    FiniteMetricMeasureSpace space;     // root weight 0, others zeta/k
    bool coarse = false;                // fewer than 10 grid cells per point
};

/// k uniform times plus the root; d(s,t) = B(s) + B(t) - 2 min over [s,t].
DiscretizedCrt crt_from_excursion(const BrownianExcursionSample& exc, std::int32_t k, Rng& rng);
/// Same with prescribed times in [0, zeta].
DiscretizedCrt crt_at_times(const BrownianExcursionSample& exc, const std::vector<double>& times);

/// CDF of B(zeta/2) for an excursion of lifetime zeta: a Maxwell law of scale sqrt(zeta)/2.
double midpoint_cdf(double x, double zeta);

}  // namespace percolab
