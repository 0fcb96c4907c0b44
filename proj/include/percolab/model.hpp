#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "percolab/rng.hpp"

namespace percolab {

struct ModelParams {
    double alpha = 0.8;
    double p_c = 0.0;
    double c_alpha = 0.0;
    double q = 0.0;

    static ModelParams from_alpha(double alpha);
};

double critical_probability(double alpha);
double peeling_probability(double alpha, std::int64_t m);
double log_peeling_probability(double alpha, std::int64_t m);
double boltzmann_weight(double alpha);
double c_alpha(double alpha);

/// Increment law of the contour walk: mass mu(1) on +1 and mu(-m) on -m.
class StepLaw {
public:
    explicit StepLaw(const ModelParams& params);

    const ModelParams& params() const { return params_; }
    double up() const { return up_; }
    double down(std::int64_t m) const;
    double prob(std::int64_t i) const;
    double log_prob(std::int64_t i) const;

    /// Returns +1 or -m.
    std::int64_t sample(Rng& rng) const;

    std::size_t table_size() const { return cum_down_.size(); }
    double total_mass(std::int64_t max_m) const;
    double mean(std::int64_t max_m) const;

private:
    ModelParams params_;
    double up_ = 0.0;
    std::vector<double> cum_down_;  // cum_down_[m-1] = mu(1) + sum_{j<=m} mu(-j)
};

/// Offspring laws of the two-type tree: geometric on black vertices,
/// mu_circ(m) = p_m/(1-alpha) on white vertices.
class OffspringLaws {
public:
    explicit OffspringLaws(const ModelParams& params);

    const ModelParams& params() const { return params_; }
    double bullet_param() const { return s_; }
    double bullet(std::int64_t k) const;
    double circ(std::int64_t m) const;
    double log_bullet(std::int64_t k) const;
    double log_circ(std::int64_t m) const;
    double mean_bullet() const;
    double mean_circ() const;
    double var_bullet() const;
    double mean_circ_series(std::int64_t max_m) const;

    std::int64_t sample_bullet(Rng& rng) const;
    std::int64_t sample_circ(Rng& rng) const;
    std::int64_t sample_bullet_biased(Rng& rng) const;
    std::int64_t sample_circ_biased(Rng& rng) const;

private:
    ModelParams params_;
    double s_ = 0.0;
    std::vector<double> cum_circ_;
    std::vector<double> cum_circ_biased_;
};

struct Estimate {
    double value = 0.0;
    double stderr_ = 0.0;
    std::size_t samples = 0;
    bool flagged = false;  // relative standard error above 10%
};

struct ScalingConstants {
    Estimate beta;
    Estimate beta_degree;
    Estimate chi_d;
    Estimate chi_R;
    Estimate sigma;
    Estimate gamma;
    Estimate delta;
    Estimate kappa;
    Estimate theta;
};

struct ScalingBudget {
    std::size_t beta_samples = 20000;
    std::size_t chi_samples = 20000;
    std::size_t sigma_trees = 2000;
    std::int64_t sigma_tree_size = 2000;
};

class DecorationFamily;

ScalingConstants estimate_scaling_constants(const ModelParams& params, const ScalingBudget& budget,
                                            std::uint64_t seed);
ScalingConstants estimate_scaling_constants(const ModelParams& params, const ScalingBudget& budget,
                                            std::uint64_t seed, const DecorationFamily& family);

Estimate make_estimate(const std::vector<double>& xs);

}  // namespace percolab
