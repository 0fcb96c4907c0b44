#include <cmath>
#include <numbers>
#include <string>

#include "percolab/cluster.hpp"
#include "percolab/coding.hpp"
#include "percolab/errors.hpp"
#include "percolab/excursions.hpp"
#include "percolab/geometry.hpp"
#include "percolab/model.hpp"

namespace percolab {

namespace {

struct Moments {
    double mean_x = 0, mean_y = 0, var_x = 0, var_y = 0, cov = 0;
    std::size_t n = 0;
};

Moments moments(const std::vector<double>& x, const std::vector<double>& y) {
    Moments m;
    m.n = x.size();
    for (std::size_t i = 0; i < m.n; ++i) {
        m.mean_x += x[i];
        m.mean_y += y[i];
    }
    m.mean_x /= static_cast<double>(m.n);
    m.mean_y /= static_cast<double>(m.n);
    for (std::size_t i = 0; i < m.n; ++i) {
        m.var_x += (x[i] - m.mean_x) * (x[i] - m.mean_x);
        m.var_y += (y[i] - m.mean_y) * (y[i] - m.mean_y);
        m.cov += (x[i] - m.mean_x) * (y[i] - m.mean_y);
    }
    const double d = static_cast<double>(m.n - 1);
    m.var_x /= d;
    m.var_y /= d;
    m.cov /= d;
    return m;
}

Estimate finish(double value, double rel_se, std::size_t samples) {
    Estimate e;
    e.value = value;
    e.stderr_ = std::abs(value) * rel_se;
    e.samples = samples;
    e.flagged = rel_se > 0.1 || !(value > 0.0);
    return e;
}

double rel(const Estimate& e) { return e.value != 0.0 ? e.stderr_ / std::abs(e.value) : 0.0; }

// ratio mean_y / mean_x with the delta-method standard error
Estimate ratio(const Moments& m) {
    const double r = m.mean_y / m.mean_x;
    const double nn = static_cast<double>(m.n);
    const double v = (m.var_y / (m.mean_y * m.mean_y) + m.var_x / (m.mean_x * m.mean_x) -
                      2.0 * m.cov / (m.mean_x * m.mean_y)) / nn;
    return finish(r, std::sqrt(std::max(0.0, v)), m.n);
}

}  // namespace

ScalingConstants estimate_scaling_constants(const ModelParams& params, const ScalingBudget& budget,
                                            std::uint64_t seed) {
    return estimate_scaling_constants(params, budget, seed, PercolatedBoltzmannFamily(params));
}

ScalingConstants estimate_scaling_constants(const ModelParams& params, const ScalingBudget& budget,
                                            std::uint64_t seed, const DecorationFamily& family) {
    if (budget.beta_samples < 1000 || budget.chi_samples < 1000 || budget.sigma_trees < 1000) {
        throw DomainError("scaling budget must be at least 1000 samples per constant");
    }
    if (budget.sigma_tree_size < 10) throw DomainError("sigma tree size must be at least 10");
    const StepLaw law(params);
    const OffspringLaws laws(params);
    ScalingConstants out;

    // volume per step: zero on up-steps, decoration mass on down-steps
    {
        Rng rng(seed, 1);
        std::vector<double> count(budget.beta_samples), degree(budget.beta_samples);
        for (std::size_t i = 0; i < budget.beta_samples; ++i) {
            const auto s = law.sample(rng);
            if (s == 1) continue;
            const auto mass = decoration_mass(family.sample(static_cast<std::int32_t>(1 - s), rng));
            count[i] = static_cast<double>(mass.counting);
            degree[i] = static_cast<double>(mass.degree);
        }
        const Moments m = moments(count, degree);
        const double nn = static_cast<double>(m.n);
        out.beta = finish(1.0 / m.mean_x, std::sqrt(m.var_x / nn) / m.mean_x, m.n);
        out.beta_degree = finish(1.0 / m.mean_y, std::sqrt(m.var_y / nn) / m.mean_y, m.n);
        // kappa = beta / beta_degree = mean degree mass / mean counting mass
        out.kappa = ratio(m);
    }

    // boundary through-distances of size-biased decorations
    {
        Rng rng(seed, 2);
        std::vector<double> dist(budget.chi_samples), res(budget.chi_samples);
        const double factor = laws.mean_bullet() * laws.mean_circ();
        for (std::size_t i = 0; i < budget.chi_samples; ++i) {
            const auto y = laws.sample_circ_biased(rng);
            const Decoration d = family.sample(static_cast<std::int32_t>(y + 1), rng);
            const auto j = d.boundary[1 + rng.below(static_cast<std::uint64_t>(y))];
            const auto bfs = bfs_distances(d.graph, d.boundary[0]);
            if (bfs[j] < 0) throw ValidationError("decoration boundary is disconnected");
            dist[i] = factor * bfs[j];
            res[i] = factor * ResistanceSolver(d.graph, d.boundary[0]).to(j);
        }
        const Moments m = moments(dist, res);
        const double nn = static_cast<double>(m.n);
        out.chi_d = finish(m.mean_x, std::sqrt(m.var_x / nn) / m.mean_x, m.n);
        out.chi_R = finish(m.mean_y, std::sqrt(m.var_y / nn) / m.mean_y, m.n);
        out.delta = ratio(m);
    }

    // tree scaling from the mean depth of a uniform vertex: sqrt(pi/8) for the unit excursion
    {
        Rng rng(seed, 3);
        std::vector<double> h(budget.sigma_trees);
        for (std::size_t i = 0; i < budget.sigma_trees; ++i) {
            const auto cp = sample_tree_excursion(law, budget.sigma_tree_size, rng, 4 * budget.sigma_tree_size);
            const ExcursionTree et = tree_from_excursion(cp.path);
            double total = 0.0;
            for (std::int32_t v = 0; v < et.tree.size(); ++v) total += et.tree.depth(v);
            const double size = et.tree.size();
            h[i] = total / size / std::sqrt(size);
        }
        const Estimate mh = make_estimate(h);
        const double c = 2.0 * std::sqrt(std::numbers::pi / 8.0);
        out.sigma = finish(c / mh.value, rel(mh), mh.samples);
    }

    const double g = out.chi_d.value * std::sqrt(out.beta.value) / out.sigma.value;
    out.gamma = finish(g,
                       std::sqrt(rel(out.chi_d) * rel(out.chi_d) + 0.25 * rel(out.beta) * rel(out.beta) +
                                 rel(out.sigma) * rel(out.sigma)),
                       std::min({out.chi_d.samples, out.beta.samples, out.sigma.samples}));
    out.theta = finish(out.delta.value * out.gamma.value * out.kappa.value,
                       std::sqrt(rel(out.delta) * rel(out.delta) + rel(out.gamma) * rel(out.gamma) +
                                 rel(out.kappa) * rel(out.kappa)),
                       std::min({out.delta.samples, out.gamma.samples, out.kappa.samples}));
    return out;
}

}  // namespace percolab
