#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "percolab/model.hpp"
#include "percolab/rng.hpp"

namespace percolab {

enum class PathKind {
    tree,      // Z_0 = Z_n = 1, Z >= 1, increments in {+1, -1, -2, ...}
    peeling,   // Z_0 = 1, Z >= 1 before the end, Z_n <= 0
    reversed,  // time reversal of a tree excursion: increments in {-1, +1, +2, ...}
};

struct LatticePath {
    std::vector<std::int64_t> z;
    PathKind kind = PathKind::peeling;

    std::int64_t length() const { return static_cast<std::int64_t>(z.size()) - 1; }
    std::int64_t back() const { return z.back(); }
};

/// Throws ValidationError naming the first violating index.
void validate(const LatticePath& path);
bool is_valid(const LatticePath& path);

struct Caps {
    std::int64_t steps = 1'000'000'000;
    std::int64_t rejections = 10'000'000;
    std::int64_t tree_size = 10'000'000;
};

LatticePath sample_excursion(const StepLaw& law, Rng& rng, std::int64_t step_cap = Caps{}.steps);

/// tau of one excursion without storing the path; returns `censor` if tau >= censor.
std::int64_t sample_tau(const StepLaw& law, Rng& rng, std::int64_t censor);

struct ConditionedPath {
    LatticePath path;
    std::int64_t rejections = 0;
};

/// Rejection sampling of a peeling excursion with n <= tau, and tau <= max_length when
/// max_length > 0.
ConditionedPath sample_conditioned_excursion(const StepLaw& law, std::int64_t n, Rng& rng,
                                             std::int64_t max_length = 0, const Caps& caps = {});

/// Tree excursion of the reversed walk (steps -1 or +k) turned around: a tree excursion of
/// length at least n (and at most max_length if positive).
ConditionedPath sample_tree_excursion(const StepLaw& law, std::int64_t n, Rng& rng,
                                      std::int64_t max_length = 0, const Caps& caps = {});

enum class PeelEventType : std::uint8_t { internal_black, internal_white, boundary_right, boundary_left };

struct PeelEvent {
    PeelEventType type;
    std::int64_t m = 0;  // distance for boundary events
};

struct PeelingTrace {
    std::vector<std::int64_t> b;
    std::vector<PeelEvent> events;
    bool terminated = false;

    std::int64_t t_hat() const { return static_cast<std::int64_t>(b.size()) - 1; }
};

PeelingTrace simulate_peeling(const ModelParams& params, Rng& rng, std::int64_t step_cap = Caps{}.steps);
/// With max_changes > 0 the simulation stops once B has changed that many times; the trace is
/// then a prefix and stays unterminated unless B already hit 0.
PeelingTrace simulate_peeling(const OffspringLaws& laws, Rng& rng, std::int64_t step_cap,
                              std::int64_t max_changes = 0);
PeelEvent sample_peel_event(const OffspringLaws& laws, Rng& rng);
/// Throws on unterminated traces unless allow_prefix is set.
LatticePath contract_to_jumps(const PeelingTrace& trace, bool allow_prefix = false);

LatticePath reverse(const LatticePath& path);

struct TailFit {
    double exponent = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    double x_lo = 0.0;
    double x_hi = 0.0;
    std::size_t points = 0;
};

/// Log-log regression of the empirical survival function. Values >= censor (if positive) are
/// treated as right-censored. x_lo defaults to 10 times the smallest sample; x_hi is the largest
/// x with at least `min_tail` samples beyond it.
TailFit tail_exponent_estimate(std::vector<double> samples, double censor = 0.0, double x_lo = 0.0,
                               std::size_t min_tail = 100);

std::vector<std::pair<double, double>> empirical_survival(std::vector<double> samples,
                                                          const std::vector<double>& xs);

}  // namespace percolab
