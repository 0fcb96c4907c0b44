#include "percolab/verification.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <memory>
#include <sstream>

#include "json.hpp"

#include "percolab/boltzmann.hpp"
#include "percolab/cluster.hpp"
#include "percolab/coding.hpp"
#include "percolab/continuum.hpp"
#include "percolab/dynamics.hpp"
#include "percolab/errors.hpp"
#include "percolab/excursions.hpp"
#include "percolab/geometry.hpp"
#include "percolab/stats.hpp"

namespace percolab {

bool CriterionResult::passed() const {
    return !checks.empty() && std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

namespace {

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", x);
    return buf;
}

Check below(const std::string& name, double value, double bound) {
    return {name, value, "< " + fmt(bound), value < bound};
}

Check at_least(const std::string& name, double value, double bound) {
    return {name, value, ">= " + fmt(bound), value >= bound};
}

Check above(const std::string& name, double value, double bound) {
    return {name, value, "> " + fmt(bound), value > bound};
}

Check within(const std::string& name, double value, double lo, double hi) {
    return {name, value, "in [" + fmt(lo) + ", " + fmt(hi) + "]", value >= lo && value <= hi};
}

std::int64_t budget(const VerifyOptions& o, double n, std::int64_t floor = 1) {
    return std::max<std::int64_t>(floor, std::llround(n * o.scale));
}

void log(const VerifyOptions& o, const std::string& msg) {
    if (o.progress) o.progress(msg);
}

const std::vector<double> alpha_grid{0.70, 0.75, 0.80, 0.85, 0.90, 0.95};

// ---------------------------------------------------------------- A1

CriterionResult a1(const VerifyOptions&) {
    CriterionResult r{"A1", "exact constants", {}, 0.0};
    double centering = 0.0, product = 0.0, identity = 0.0;
    std::vector<Check> partial;
    for (double alpha : alpha_grid) {
        const ModelParams p = ModelParams::from_alpha(alpha);
        const StepLaw law(p);
        const OffspringLaws laws(p);
        long double s = law.up();
        for (std::int64_t m = 1;; ++m) {
            const long double t = static_cast<long double>(m) * law.down(m);
            s -= t;
            if (m > 10 && t < 1e-22L) break;
        }
        centering = std::max(centering, static_cast<double>(std::fabs(s)));
        product = std::max(product, std::abs(laws.mean_bullet() * laws.mean_circ_series(5000) - 1.0));
        identity = std::max(identity, std::abs(1.0 / p.c_alpha - alpha * p.p_c - (1.0 - alpha) / 2.0));
        long double ps = 0.0L;
        for (std::int64_t m = 1; m <= 50; ++m) ps += peeling_probability(alpha, m);
        partial.push_back(below("partial sum of p_m to 50 vs 1-alpha, alpha=" + fmt(alpha),
                                static_cast<double>(std::fabs(ps - (1.0L - alpha))), 1e-10));
    }
    r.checks.push_back(below("max |sum i mu(i)|", centering, 1e-10));
    r.checks.push_back(below("max |E[mu_bullet]E[mu_circ] - 1|", product, 1e-10));
    r.checks.push_back(below("max |1/c_alpha - alpha p_c - (1-alpha)/2|", identity, 1e-12));
    r.checks.insert(r.checks.end(), partial.begin(), partial.end());
    return r;
}

// ---------------------------------------------------------------- A2

void tree_excursions(std::int64_t length, const std::function<void(const LatticePath&)>& visit) {
    LatticePath p;
    p.kind = PathKind::tree;
    p.z = {1};
    std::function<void()> rec = [&]() {
        const auto left = length - p.length();
        const auto v = p.z.back();
        if (left == 0) {
            if (v == 1) visit(p);
            return;
        }
        p.z.push_back(v + 1);
        rec();
        p.z.pop_back();
        for (std::int64_t k = 1; k < v; ++k) {
            p.z.push_back(v - k);
            rec();
            p.z.pop_back();
        }
    };
    rec();
}

std::string plane_code(const TwoTypeTree& t, std::int32_t v) {
    std::string s = "(";
    for (auto c : t.children(v)) s += plane_code(t, c);
    return s + ")";
}

std::vector<TwoTypeTree> plane_trees(std::int32_t vertices) {
    std::vector<TwoTypeTree> out;
    const std::int32_t half = vertices - 1;
    std::string word;
    std::function<void(std::int32_t, std::int32_t)> rec = [&](std::int32_t up, std::int32_t down) {
        if (up == half && down == half) {
            TwoTypeTree t;
            std::int32_t cur = t.add_root();
            for (char c : word) cur = c == 'U' ? t.add_child(cur) : t.parent(cur);
            t.finalize();
            out.push_back(std::move(t));
            return;
        }
        if (up < half) {
            word.push_back('U');
            rec(up + 1, down);
            word.pop_back();
        }
        if (down < up) {
            word.push_back('D');
            rec(up, down + 1);
            word.pop_back();
        }
    };
    rec(0, 0);
    return out;
}

std::vector<std::pair<std::int64_t, std::int64_t>> label_edges(const std::vector<std::pair<std::int32_t, std::int32_t>>& e,
                                                               const std::vector<std::int64_t>& label) {
    std::vector<std::pair<std::int64_t, std::int64_t>> out;
    for (auto [a, b] : e) out.emplace_back(std::min(label[a], label[b]), std::max(label[a], label[b]));
    std::sort(out.begin(), out.end());
    return out;
}

CriterionResult a2(const VerifyOptions& o) {
    CriterionResult r{"A2", "bijection and oracle suite", {}, 0.0};
    const ModelParams p = ModelParams::from_alpha(o.alpha);
    const StepLaw law(p);
    const OffspringLaws laws(p);
    double deviation = 0.0;
    std::int64_t trees = 0, codable = 0, tree_round_trip_failures = 0;
    for (std::int32_t v = 1; v <= 8; ++v) {
        for (const auto& t : plane_trees(v)) {
            ++trees;
            const auto tp = tree_probability(t, laws);
            const double gw = tp.structural_zero ? 0.0 : std::exp(tp.log_p);
            double walk = 0.0;
            if (!t.has_white_leaf()) {
                ++codable;
                const LatticePath z = excursion_from_tree(t);
                walk = std::exp(excursion_log_probability(z, law));
                const ExcursionTree back = tree_from_excursion(z);
                if (plane_code(back.tree, back.tree.root()) != plane_code(t, t.root())) ++tree_round_trip_failures;
            }
            deviation += std::abs(gw - walk);
        }
    }
    std::int64_t excursions = 0, path_round_trip_failures = 0;
    for (std::int64_t n = 0; n <= 7; ++n) {
        tree_excursions(n, [&](const LatticePath& z) {
            ++excursions;
            if (excursion_from_tree(tree_from_excursion(z).tree).z != z.z) ++path_round_trip_failures;
        });
    }
    std::int64_t looptrees = 0, looptree_failures = 0;
    for (std::int64_t n = 0; n <= 14; ++n) {
        tree_excursions(n, [&](const LatticePath& z) {
            ++looptrees;
            const QuotientGraph q = quotient_looptree(z);
            const ExcursionTree et = tree_from_excursion(z);
            const LooptreeMap lm = looptree_from_tree(et.tree);
            auto ql = q.vertex_label;
            auto ll = lm.looptree.vertex_label;
            std::sort(ql.begin(), ql.end());
            std::sort(ll.begin(), ll.end());
            if (ql != ll || label_edges(q.edges, q.vertex_label) !=
                                label_edges(lm.looptree.edges(), lm.looptree.vertex_label)) {
                ++looptree_failures;
            }
        });
    }
    r.checks.push_back(below("total |P_GW - P_walk| over " + std::to_string(trees) + " plane trees <= 8 vertices",
                             deviation, 1e-10));
    r.checks.push_back(below("tree -> excursion -> tree mismatches", tree_round_trip_failures, 0.5));
    r.checks.push_back(below("excursion -> tree -> excursion mismatches", path_round_trip_failures, 0.5));
    r.checks.push_back(below("|#codable trees - #excursions|", std::abs(codable - excursions), 0.5));
    r.checks.push_back(below("looptree vs quotient mismatches over " + std::to_string(looptrees) + " excursions",
                             looptree_failures, 0.5));
    return r;
}

// ---------------------------------------------------------------- A3

CriterionResult a3(const VerifyOptions& o) {
    CriterionResult r{"A3", "peeling and contour equivalence", {}, 0.0};
    const ModelParams p = ModelParams::from_alpha(o.alpha);
    const StepLaw law(p);
    const OffspringLaws laws(p);
    const std::int64_t samples = budget(o, 1e6, 1000);
    const std::int64_t cells = 200;
    std::vector<double> observed(cells + 2, 0.0);  // +1, -1..-cells, tail
    Rng rng(o.seed, 3);
    for (std::int64_t i = 0; i < samples; ++i) {
        const PeelingTrace t = simulate_peeling(laws, rng, Caps{}.steps, 1);
        const LatticePath z = contract_to_jumps(t, true);
        const std::int64_t inc = z.z.at(1) - z.z.at(0);
        if (inc == 1) observed[0] += 1;
        else if (-inc <= cells) observed[-inc] += 1;
        else observed[cells + 1] += 1;
    }
    std::vector<double> probs(cells + 2);
    probs[0] = law.up();
    double s = probs[0];
    for (std::int64_t m = 1; m <= cells; ++m) {
        probs[m] = law.down(m);
        s += probs[m];
    }
    probs[cells + 1] = std::max(0.0, 1.0 - s);
    const TestResult t = chi_square_gof(observed, probs);
    r.checks.push_back(above("chi-square p-value of the first increment, " + std::to_string(samples) + " samples",
                             t.p_value, 0.01));
    return r;
}

// ---------------------------------------------------------------- A4

CriterionResult a4(const VerifyOptions& o) {
    CriterionResult r{"A4", "tail exponents", {}, 0.0};
    const ModelParams p = ModelParams::from_alpha(o.alpha);
    const StepLaw law(p);
    const PartitionFunction z(p.q);
    {
        const std::int64_t samples = budget(o, 1e6, 20000);
        const std::int64_t censor = 20000;
        Rng rng(o.seed, 41);
        std::vector<double> tau(samples);
        for (auto& t : tau) t = static_cast<double>(sample_tau(law, rng, censor));
        const TailFit f = tail_exponent_estimate(tau, static_cast<double>(censor), 10.0);
        r.checks.push_back(within("tau survival exponent over [" + fmt(f.x_lo) + ", " + fmt(f.x_hi) + "]",
                                  f.exponent, -0.55, -0.45));
        r.checks.push_back(at_least("tau fit decades", std::log10(f.x_hi / f.x_lo), 2.0));
    }
    {
        const std::int64_t samples = budget(o, 1e5, 20000);
        const std::int64_t censor = 10000;
        Rng rng(o.seed, 42);
        std::vector<double> vol(samples);
        for (auto& v : vol) v = static_cast<double>(streamed_cluster_volume(law, p, z, rng, censor).size);
        const TailFit f = tail_exponent_estimate(vol, static_cast<double>(censor), 10.0);
        r.checks.push_back(within("cluster volume survival exponent over [" + fmt(f.x_lo) + ", " + fmt(f.x_hi) + "]",
                                  f.exponent, -0.55, -0.45));
        r.checks.push_back(at_least("volume fit decades", std::log10(f.x_hi / f.x_lo), 2.0));
    }
    return r;
}

// ---------------------------------------------------------------- A5

CriterionResult a5(const VerifyOptions& o) {
    CriterionResult r{"A5", "Boltzmann oracle", {}, 0.0};
    const ModelParams p = ModelParams::from_alpha(0.8);
    const PartitionFunction z(p.q);
    const EnumerationResult en = enumerate_triangulations(3, 2);
    std::map<std::vector<std::int32_t>, double> target, empirical;
    for (const auto& m : en.maps) target[canonical_code(m)] += std::pow(p.q, m.internal_count());
    const std::int64_t samples = budget(o, 1e5, 1000);
    Rng rng(o.seed, 5);
    std::int64_t kept = 0;
    for (std::int64_t i = 0; i < samples; ++i) {
        const auto m = sample_boltzmann(3, z, rng);
        if (m.internal_count() <= 2) {
            empirical[canonical_code(m)] += 1.0;
            ++kept;
        }
    }
    r.checks.push_back(below("conditional TV on (m=3, #internal <= 2), " + std::to_string(kept) + " samples",
                             total_variation(empirical, target), 0.01));
    const auto counts = triangulation_counts(5, 3);
    std::int64_t mismatches = 0, compared = 0;
    for (std::int32_t m = 2; m <= 5; ++m) {
        const EnumerationResult e = enumerate_triangulations(m, 3);
        for (std::int32_t n = 0; n <= 3; ++n) {
            ++compared;
            const auto c = counts[m][n];
            const auto closed = std::llround(std::exp(log_triangulation_count(m, n)));
            if (static_cast<std::int64_t>(c) != e.count_by_internal[n] || closed != e.count_by_internal[n]) {
                ++mismatches;
            }
        }
    }
    r.checks.push_back(below("coefficient mismatches over " + std::to_string(compared) + " (m, #internal) cells",
                             mismatches, 0.5));
    return r;
}

// ---------------------------------------------------------------- shared sampling

ConditioningOptions tau_options(const ScalingConstants& c, std::int64_t n, std::int64_t window) {
    ConditioningOptions opt;
    opt.beta = c.beta.value;
    opt.max_length = static_cast<std::int64_t>(std::ceil(window * c.beta.value * static_cast<double>(n)));
    return opt;
}

// iterated double sweep: a lower bound on the diameter, exact on trees
std::int32_t sweep_diameter(const Graph& g, std::int32_t start) {
    std::int32_t best = 0, from = start;
    for (int i = 0; i < 4; ++i) {
        const auto d = bfs_distances(g, from);
        const auto it = std::max_element(d.begin(), d.end());
        if (*it <= best && i > 0) break;
        best = std::max(best, *it);
        from = static_cast<std::int32_t>(it - d.begin());
    }
    return best;
}

// ---------------------------------------------------------------- A6

CriterionResult a6(const VerifyOptions& o) {
    CriterionResult r{"A6", "structure statistics", {}, 0.0};
    const ModelParams p = ModelParams::from_alpha(o.alpha);
    const StepLaw law(p);
    const PartitionFunction z(p.q);
    const ScalingConstants& c = reference_constants(o);
    const double beta = c.beta.value;
    const std::int64_t n = 10000;
    {
        // final pair (Z_{tau-1}, -Z_tau) given tau >= n; limit law proportional to l mu(-l-k)
        const std::int64_t samples = budget(o, 1e5, 2000);
        Rng rng(o.seed, 61);
        std::map<std::pair<std::int64_t, std::int64_t>, double> emp, target;
        for (std::int64_t l = 1; l <= 6; ++l)
            for (std::int64_t k = 0; l + k <= 6; ++k) target[{l, k}] = l * law.down(l + k);
        for (std::int64_t i = 0; i < samples; ++i) {
            const auto cp = sample_conditioned_excursion(law, n, rng, 4 * n);
            const auto& zz = cp.path.z;
            const std::int64_t l = zz[zz.size() - 2], k = -zz.back();
            if (l + k <= 6) emp[{l, k}] += 1.0;
        }
        r.checks.push_back(below("final-pair TV (l+k <= 6), n=1e4, " + std::to_string(samples) + " samples",
                                 total_variation(emp, target), 0.05));
    }
    {
        const auto threshold = static_cast<std::int64_t>(std::ceil(beta * static_cast<double>(n)));
        const std::int64_t samples = budget(o, 2000, 200);
        Rng rng(o.seed, 62);
        std::int64_t hits = 0;
        for (std::int64_t acc = 0; acc < samples;) {
            const auto sv = streamed_cluster_volume(law, p, z, rng, n, threshold);
            if (!sv.reached_tau_threshold) continue;
            ++acc;
            hits += sv.size >= n;
        }
        r.checks.push_back(at_least("P(|C| >= n | tau >= beta n), n=1e4", static_cast<double>(hits) / samples, 0.9));
        hits = 0;
        for (std::int64_t acc = 0; acc < samples;) {
            const auto sv = streamed_cluster_volume(law, p, z, rng, n, threshold);
            if (sv.size < n) continue;
            ++acc;
            hits += sv.reached_tau_threshold;
        }
        r.checks.push_back(at_least("P(tau >= beta n | |C| >= n), n=1e4", static_cast<double>(hits) / samples, 0.9));
    }
    {
        const auto threshold = static_cast<std::int64_t>(std::ceil(beta * static_cast<double>(n)));
        const std::int64_t samples = budget(o, 2000, 200);
        Rng rng(o.seed, 63);
        const double bound = std::pow(static_cast<double>(n), 5.0 / 8.0);
        std::int64_t dominant = 0;
        for (std::int64_t i = 0; i < samples; ++i) {
            const auto cp = sample_conditioned_excursion(law, threshold, rng, 16 * threshold);
            const RootStructure rs = decompose_root_structure(cp.path);
            dominant += static_cast<double>(cp.path.length() - rs.gamma_max()) < bound;
        }
        r.checks.push_back(at_least("P(tau - Gamma_max < n^(5/8) | tau >= beta n), n=1e4",
                                    static_cast<double>(dominant) / samples, 0.9));
    }
    return r;
}

// ---------------------------------------------------------------- A7

// Height process of the tree coded by the cluster's path, rescaled to an excursion of lifetime tau / bn.
BrownianExcursionSample coding_height_excursion(const Cluster& cl, double sigma, double bn) {
    const ExtendedStructures ext = extended_structures(cl.source);
    const auto& tree = ext.tree_star.tree;
    const auto& vl = ext.tree_star.vertex_of_label;
    const auto tau = static_cast<std::int64_t>(cl.source.z.size()) - 1;
    const std::int32_t d0 = tree.depth(vl[ext.offset]);
    const double h = sigma / (2.0 * std::sqrt(bn));
    BrownianExcursionSample e;
    e.mesh = 1.0 / bn;
    e.zeta = static_cast<double>(tau) / bn;
    e.values.resize(tau + 1, 0.0);
    for (std::int64_t t = 1; t < tau; ++t) e.values[t] = h * std::max(0, tree.depth(vl[ext.offset + t]) - d0);
    return e;
}

// max |scale d_C - d_T| over the pairs of the coding correspondence
double correspondence_distortion(const Cluster& cl, const DiscretizedCrt& crt, double bn, double scale) {
    const Correspondence corr = coding_correspondence(cl.vertex_of_time, bn, crt.times, cl.root, 0);
    std::map<std::int32_t, std::vector<std::int32_t>> bfs;
    for (auto [a, b] : corr.pairs) {
        if (!bfs.contains(a)) bfs[a] = bfs_distances(cl.graph, a);
    }
    double d = 0.0;
    for (std::size_t i = 0; i < corr.pairs.size(); ++i) {
        const auto& row = bfs[corr.pairs[i].first];
        for (std::size_t j = i + 1; j < corr.pairs.size(); ++j) {
            const double dc = scale * row[corr.pairs[j].first];
            const double dt = crt.space.dist(corr.pairs[i].second, corr.pairs[j].second);
            d = std::max(d, std::abs(dc - dt));
        }
    }
    return d;
}

CriterionResult a7(const VerifyOptions& o) {
    CriterionResult r{"A7", "geometry convergence trend", {}, 0.0};
    const ModelParams p = ModelParams::from_alpha(o.alpha);
    const auto z = std::make_shared<PartitionFunction>(p.q);
    const ScalingConstants& c = reference_constants(o);
    const std::vector<std::int64_t> ns{1000, 4000, 16000};
    const std::int64_t samples = budget(o, 200, 20);
    const std::int32_t points = 200;
    const std::int64_t window = 16;
    std::vector<double> medians;
    std::vector<std::vector<double>> diameters;
    for (std::size_t ni = 0; ni < ns.size(); ++ni) {
        const std::int64_t n = ns[ni];
        const double bn = c.beta.value * static_cast<double>(n);
        const double scale = c.sigma.value / (c.chi_d.value * std::sqrt(bn));
        Rng rng(o.seed, 700 + ni);
        std::vector<double> dis, dis_indep, diam;
        for (std::int64_t s = 0; s < samples; ++s) {
            const auto cc = sample_cluster_conditioned(n, ConditioningMode::tau_ge_beta_n, p, *z, rng,
                                                       tau_options(c, n, window));
            const Cluster& cl = cc.cluster;
            // CRT coded by the rescaled height process of the cluster's own coding tree
            const DiscretizedCrt crt = crt_from_excursion(coding_height_excursion(cl, c.sigma.value, bn), points, rng);
            double zeta;
            do zeta = sample_lifetime(rng);
            while (zeta >= static_cast<double>(window));
            const auto exc = sample_excursion_fixed_lifetime(zeta, zeta / default_mesh_divisions, rng);
            const DiscretizedCrt indep = crt_from_excursion(exc, points, rng);
            dis.push_back(correspondence_distortion(cl, crt, bn, scale));
            dis_indep.push_back(correspondence_distortion(cl, indep, bn, scale));
            diam.push_back(scale * sweep_diameter(cl.graph, cl.root));
        }
        medians.push_back(median(dis));
        diameters.push_back(diam);
        log(o, "A7 n=" + std::to_string(n) + " median distortion " + fmt(medians.back()));
        r.checks.push_back({"median rescaled distortion, n=" + std::to_string(n), medians.back(), "reported", true});
        r.checks.push_back({"median distortion against an independent CRT, n=" + std::to_string(n), median(dis_indep),
                            "reported", true});
    }
    bool monotone = true;
    for (std::size_t i = 1; i < medians.size(); ++i) monotone = monotone && medians[i] <= medians[i - 1];
    r.checks.push_back({"median distortion non-increasing in n", monotone ? 1.0 : 0.0, "== 1", monotone});
    const TestResult ks = ks_two_sample(diameters[1], diameters[2]);
    r.checks.push_back(above("KS p-value of rescaled diameters, n=4e3 vs 1.6e4", ks.p_value, 0.01));
    return r;
}

// ---------------------------------------------------------------- A8

CriterionResult a8(const VerifyOptions& o) {
    CriterionResult r{"A8", "walk exponent and resistance ratio", {}, 0.0};
    const ModelParams p = ModelParams::from_alpha(o.alpha);
    const PartitionFunction z(p.q);
    const ScalingConstants& c = reference_constants(o);
    const std::int64_t window = 16;
    {
        const std::int64_t n = 10000;
        const std::int64_t clusters = budget(o, 60, 30);
        const std::int64_t steps = 100000;
        Rng rng(o.seed, 81);
        std::vector<WalkTrace> traces;
        std::vector<std::vector<double>> dist;
        while (static_cast<std::int64_t>(traces.size()) < clusters) {
            const auto cc = sample_cluster_conditioned(n, ConditioningMode::tau_ge_beta_n, p, z, rng,
                                                       tau_options(c, n, window));
            if (cc.cluster.size() < n) continue;
            const auto d = bfs_distances(cc.cluster.graph, cc.cluster.root);
            traces.push_back(srw(cc.cluster.graph, cc.cluster.root, steps, rng.split(traces.size())));
            dist.emplace_back(d.begin(), d.end());
        }
        std::vector<double> times;
        for (int i = 0; i <= 12; ++i) times.push_back(std::round(100.0 * std::pow(10.0, i / 4.0)));
        const DisplacementTable t = displacement_stats(traces, dist, times, rng);
        log(o, "A8 displacement slope " + fmt(t.slope));
        r.checks.push_back(within("log-log displacement slope over t in [1e2, 1e5], " + std::to_string(clusters) +
                                      " clusters with >= 1e4 vertices",
                                  t.slope, 0.27, 0.40));
    }
    {
        const std::int64_t n = 16000;
        const std::int64_t clusters = budget(o, 50, 30);
        Rng rng(o.seed, 82);
        std::vector<double> ratio;
        while (static_cast<std::int64_t>(ratio.size()) < clusters) {
            const auto cc = sample_cluster_conditioned(n, ConditioningMode::tau_ge_beta_n, p, z, rng,
                                                       tau_options(c, n, window));
            const Cluster& cl = cc.cluster;
            const auto v = static_cast<std::int32_t>(1 + rng.below(cl.size() - 1));
            const auto d = bfs_distances(cl.graph, cl.root);
            const double res = ResistanceSolver(cl.graph, cl.root).to(v);
            ratio.push_back(res / d[v]);
            if (ratio.size() % 10 == 0) log(o, "A8 resistance samples " + std::to_string(ratio.size()));
        }
        r.checks.push_back(below("SD/mean of R/d between root and a uniform vertex, n=1.6e4",
                                 sample_sd(ratio) / mean(ratio), 0.2));
    }
    return r;
}

// ---------------------------------------------------------------- A9

CriterionResult a9(const VerifyOptions& o) {
    CriterionResult r{"A9", "effective resistance", {}, 0.0};
    Rng rng(o.seed, 9);
    double worst = 0.0;
    const std::int64_t graphs = budget(o, 100, 100);
    for (std::int64_t g = 0; g < graphs; ++g) {
        const auto n = static_cast<std::int32_t>(2 + rng.below(29));
        std::vector<std::pair<std::int32_t, std::int32_t>> e;
        for (std::int32_t v = 1; v < n; ++v) e.emplace_back(static_cast<std::int32_t>(rng.below(v)), v);
        const auto extra = rng.below(static_cast<std::uint64_t>(n) + 1);
        for (std::uint64_t i = 0; i < extra; ++i) {
            e.emplace_back(static_cast<std::int32_t>(rng.below(n)), static_cast<std::int32_t>(rng.below(n)));
        }
        const Graph gr = Graph::from_edges(n, e);
        for (int k = 0; k < 5; ++k) {
            const auto a = static_cast<std::int32_t>(rng.below(n));
            const auto b = static_cast<std::int32_t>(rng.below(n));
            const double got = effective_resistance(gr, {{a, b}})[0];
            worst = std::max(worst, std::abs(got - kirchhoff_resistance(gr, a, b)));
        }
    }
    r.checks.push_back(below("max |R - Kirchhoff| over " + std::to_string(graphs) + " random graphs <= 30 vertices",
                             worst, 1e-8));
    const double c4 = effective_resistance(Graph::cycle(4), {{0, 1}})[0];
    const double k3 = effective_resistance(Graph::complete(3), {{0, 2}})[0];
    r.checks.push_back(below("|R_C4(adjacent) - 3/4|", std::abs(c4 - 0.75), 1e-8));
    r.checks.push_back(below("|R_K3 - 2/3|", std::abs(k3 - 2.0 / 3.0), 1e-8));
    std::int64_t tree_mismatch = 0;
    for (std::int64_t g = 0; g < graphs; ++g) {
        const auto n = static_cast<std::int32_t>(2 + rng.below(29));
        std::vector<std::pair<std::int32_t, std::int32_t>> e;
        for (std::int32_t v = 1; v < n; ++v) e.emplace_back(static_cast<std::int32_t>(rng.below(v)), v);
        const Graph tr = Graph::from_edges(n, e);
        for (std::int32_t a = 0; a < n; ++a) {
            const auto d = bfs_distances(tr, a);
            const ResistanceSolver s(tr, a);
            for (std::int32_t b = 0; b < n; ++b) tree_mismatch += s.to(b) != static_cast<double>(d[b]);
        }
    }
    r.checks.push_back(below("tree pairs with R != d", tree_mismatch, 0.5));
    return r;
}

struct Limit {
    const char* id;
    CriterionResult (*fn)(const VerifyOptions&);
    double seconds;
};

const Limit criteria[] = {{"A1", a1, 1.0},     {"A2", a2, 60.0},     {"A3", a3, 120.0},
                          {"A4", a4, 900.0},   {"A5", a5, 600.0},    {"A6", a6, 1800.0},
                          {"A7", a7, 7200.0},  {"A8", a8, 7200.0},   {"A9", a9, 60.0}};

}  // namespace

const ScalingConstants& reference_constants(const VerifyOptions& o) {
    static std::map<std::tuple<double, std::uint64_t, double>, ScalingConstants> cache;
    const auto key = std::make_tuple(o.alpha, o.seed, o.scale);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    ScalingBudget b;
    b.beta_samples = static_cast<std::size_t>(budget(o, 20000, 1000));
    b.chi_samples = static_cast<std::size_t>(budget(o, 20000, 1000));
    b.sigma_trees = static_cast<std::size_t>(budget(o, 2000, 1000));
    log(o, "estimating scaling constants");
    const auto c = estimate_scaling_constants(ModelParams::from_alpha(o.alpha), b, o.seed);
    log(o, "beta=" + fmt(c.beta.value) + " chi_d=" + fmt(c.chi_d.value) + " sigma=" + fmt(c.sigma.value));
    return cache.emplace(key, c).first->second;
}

std::vector<std::string> suite_criteria(const std::string& suite) {
    if (suite == "unit") return {"A1", "A9"};
    if (suite == "oracle") return {"A1", "A2", "A5", "A9"};
    if (suite == "statistical") return {"A3", "A4", "A6", "A7", "A8"};
    if (suite == "all") return {"A1", "A2", "A3", "A4", "A5", "A6", "A7", "A8", "A9"};
    throw ValidationError("unknown suite '" + suite + "' (expected unit, oracle, statistical or all)");
}

CriterionResult run_criterion(const std::string& id, const VerifyOptions& opts) {
    if (!(opts.scale > 0.0)) throw DomainError("verification budget scale must be positive");
    for (const auto& c : criteria) {
        if (id != c.id) continue;
        log(opts, "running " + id);
        const auto t0 = std::chrono::steady_clock::now();
        CriterionResult r = c.fn(opts);
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        r.checks.push_back(below("runtime in seconds", r.seconds, c.seconds));
        return r;
    }
    throw ValidationError("unknown criterion " + id);
}

std::vector<CriterionResult> run_suite(const std::string& suite, const VerifyOptions& opts) {
    std::vector<CriterionResult> out;
    for (const auto& id : suite_criteria(suite)) out.push_back(run_criterion(id, opts));
    return out;
}

std::string format_result(const CriterionResult& r) {
    std::ostringstream os;
    os << r.id << ' ' << (r.passed() ? "PASS" : "FAIL") << ' ' << r.title << " (" << fmt(r.seconds) << " s)\n";
    for (const auto& c : r.checks) {
        os << "    [" << (c.passed ? "ok" : "FAIL") << "] " << c.name << ": " << fmt(c.value) << ' ' << c.tolerance
           << '\n';
    }
    return os.str();
}

std::string report_json(const std::string& suite, const std::vector<CriterionResult>& results) {
    nlohmann::json j;
    j["suite"] = suite;
    j["criteria"] = nlohmann::json::array();
    bool all = true;
    for (const auto& r : results) {
        nlohmann::json c;
        c["id"] = r.id;
        c["title"] = r.title;
        c["passed"] = r.passed();
        c["seconds"] = r.seconds;
        c["checks"] = nlohmann::json::array();
        for (const auto& k : r.checks) {
            c["checks"].push_back({{"name", k.name}, {"value", k.value}, {"tolerance", k.tolerance}, {"passed", k.passed}});
        }
        all = all && r.passed();
        j["criteria"].push_back(std::move(c));
    }
    j["passed"] = all;
    return j.dump(2);
}

}  // namespace percolab
