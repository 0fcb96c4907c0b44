#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "percolab/boltzmann.hpp"
#include "percolab/cluster.hpp"
#include "percolab/continuum.hpp"
#include "percolab/dynamics.hpp"
#include "percolab/errors.hpp"
#include "percolab/excursions.hpp"
#include "percolab/geometry.hpp"
#include "percolab/io.hpp"
#include "percolab/model.hpp"
#include "percolab/stats.hpp"
#include "percolab/verification.hpp"

using namespace percolab;
using nlohmann::json;

namespace {

constexpr const char* version = "0.1.0";

enum Exit { ok = 0, failure = 1, usage = 2, cap = 3 };

std::string num(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", x);
    return buf;
}

json estimate_json(const Estimate& e) { return e.value; }

json scaling_json(const ScalingConstants& c, const ScalingBudget& b) {
    json s;
    const std::pair<const char*, const Estimate*> named[] = {
        {"beta", &c.beta},   {"beta_degree", &c.beta_degree}, {"chi_d", &c.chi_d},
        {"chi_R", &c.chi_R}, {"sigma", &c.sigma},             {"gamma", &c.gamma},
        {"delta", &c.delta}, {"kappa", &c.kappa},             {"theta", &c.theta}};
    json se, flagged = json::array();
    for (auto [name, e] : named) {
        s[name] = estimate_json(*e);
        se[name] = e->stderr_;
        if (e->flagged) flagged.push_back(name);
    }
    s["stderr"] = se;
    s["flagged"] = flagged;
    s["samples"] = {{"beta", b.beta_samples},
                    {"chi", b.chi_samples},
                    {"sigma_trees", b.sigma_trees},
                    {"sigma_tree_size", b.sigma_tree_size}};
    return s;
}

ScalingBudget budget_of(const RunConfig& c) {
    ScalingBudget b;
    b.beta_samples = static_cast<std::size_t>(c.beta_samples);
    b.chi_samples = static_cast<std::size_t>(c.chi_samples);
    b.sigma_trees = static_cast<std::size_t>(c.sigma_trees);
    b.sigma_tree_size = c.sigma_tree_size;
    return b;
}

Caps caps_of(const RunConfig& c) {
    Caps k;
    k.steps = c.step_cap;
    k.rejections = c.rejection_cap;
    return k;
}

ConditioningMode mode_of(const RunConfig& c) {
    return c.mode == "size_ge_n" ? ConditioningMode::size_ge_n : ConditioningMode::tau_ge_beta_n;
}

std::string sample_id(const RunConfig& c, std::int64_t n, std::int64_t i) {
    return std::to_string(c.seed) + "-" + std::to_string(n) + "-" + std::to_string(i);
}

std::int32_t sweep_diameter(const Graph& g, std::int32_t start) {
    std::int32_t best = 0, from = start;
    for (int i = 0; i < 4; ++i) {
        const auto d = bfs_distances(g, from);
        const auto it = std::max_element(d.begin(), d.end());
        if (i > 0 && *it <= best) break;
        best = std::max(best, *it);
        from = static_cast<std::int32_t>(it - d.begin());
    }
    return best;
}

// Tasks run in order; each records its status in the manifest and failures do not stop later tasks.
class Run {
public:
    Run(std::string command, RunConfig cfg) : command_(std::move(command)), cfg_(std::move(cfg)) {}

    void task(const std::string& name, const std::function<void(json&)>& body) {
        json entry{{"name", name}};
        try {
            body(entry);
            entry["status"] = "ok";
        } catch (const CapExceeded& e) {
            entry["status"] = "cap_exceeded";
            entry["error"] = e.what();
            worst_ = std::max(worst_, static_cast<int>(cap));
        } catch (const std::exception& e) {
            entry["status"] = "failed";
            entry["error"] = e.what();
            worst_ = std::max(worst_, static_cast<int>(failure));
        }
        tasks_.push_back(std::move(entry));
    }

    void fail(int code) { worst_ = std::max(worst_, code); }

    std::string path(const std::string& file) const { return (std::filesystem::path(cfg_.out_dir) / file).string(); }

    void emit(const std::string& file, const std::string& body, json& entry) {
        write_file(path(file), body);
        entry["output"] = file;
    }

    int finish() {
        json m{{"version", version},
               {"command", command_},
               {"config_digest", cfg_.digest()},
               {"config", cfg_.to_text()},
               {"tasks", tasks_},
               {"exit_code", worst_}};
        write_file(path("manifest.json"), m.dump(2) + "\n");
        return worst_;
    }

    const RunConfig& cfg() const { return cfg_; }

private:
    std::string command_;
    RunConfig cfg_;
    json tasks_ = json::array();
    int worst_ = ok;
};

ScalingConstants constants_of(const RunConfig& c) {
    return estimate_scaling_constants(ModelParams::from_alpha(c.alpha), budget_of(c), c.seed);
}

// ---------------------------------------------------------------- subcommands

void cmd_constants(Run& run, bool scaling_only) {
    run.task(scaling_only ? "scaling" : "constants", [&](json& e) {
        const RunConfig& c = run.cfg();
        const ModelParams p = ModelParams::from_alpha(c.alpha);
        const OffspringLaws laws(p);
        const json s = scaling_json(constants_of(c), budget_of(c));
        json out;
        if (scaling_only) {
            out = s;
        } else {
            out = {{"alpha", p.alpha},       {"p_c", p.p_c}, {"q", p.q}, {"c_alpha", p.c_alpha},
                   {"mu_bullet_param", laws.bullet_param()}, {"scaling", s}};
        }
        const std::string file = scaling_only ? "scaling.json" : "constants.json";
        run.emit(file, out.dump(2) + "\n", e);
        std::cout << out.dump(2) << "\n";
    });
}

void cmd_sample(Run& run, const std::string& what) {
    const RunConfig& c = run.cfg();
    const ModelParams p = ModelParams::from_alpha(c.alpha);
    const StepLaw law(p);
    const Caps caps = caps_of(c);
    if (what == "cluster") {
        const PartitionFunction z(p.q);
        std::unique_ptr<ScalingConstants> sc;
        if (mode_of(c) == ConditioningMode::tau_ge_beta_n) {
            run.task("scaling", [&](json&) { sc = std::make_unique<ScalingConstants>(constants_of(c)); });
            if (!sc) return;
        }
        for (auto n : c.n_grid) {
            run.task("sample cluster n=" + std::to_string(n), [&](json& e) {
                Rng rng(c.seed, static_cast<std::uint64_t>(n));
                ConditioningOptions opt;
                opt.caps = caps;
                if (sc) {
                    opt.beta = sc->beta.value;
                    opt.max_length = static_cast<std::int64_t>(std::ceil(c.window * opt.beta * static_cast<double>(n)));
                }
                std::ostringstream os;
                os << "sample_id,tau,size,diameter,root_loop_size,gamma_max\n";
                for (std::int64_t i = 0; i < c.samples; ++i) {
                    const auto cc = sample_cluster_conditioned(n, mode_of(c), p, z, rng, opt);
                    const Cluster& cl = cc.cluster;
                    const RootStructure rs = decompose_root_structure(cl.source);
                    os << sample_id(c, n, i) << ',' << cl.source.length() << ',' << cl.size() << ','
                       << sweep_diameter(cl.graph, cl.root) << ',' << cl.root_loop_size() << ',' << rs.gamma_max()
                       << '\n';
                }
                run.emit("clusters_n" + std::to_string(n) + ".csv", os.str(), e);
            });
        }
        return;
    }
    if (what != "excursion" && what != "peeling") throw ValidationError("--what must be excursion, peeling or cluster");
    const OffspringLaws laws(p);
    for (auto n : c.n_grid) {
        run.task("sample " + what + " n=" + std::to_string(n), [&](json& e) {
            Rng rng(c.seed, static_cast<std::uint64_t>(n));
            std::ostringstream os;
            os << "sample_id,tau,Z_tau,Z_tau_minus_1,gamma_max,n_subexcursions\n";
            for (std::int64_t i = 0; i < c.samples; ++i) {
                LatticePath path;
                if (what == "excursion") {
                    const std::int64_t max_len = c.window * n;
                    path = sample_conditioned_excursion(law, n, rng, max_len, caps).path;
                } else {
                    path = contract_to_jumps(simulate_peeling(laws, rng, caps.steps));
                }
                const RootStructure rs = decompose_root_structure(path);
                const auto& zz = path.z;
                os << sample_id(c, n, i) << ',' << path.length() << ',' << zz.back() << ',' << zz[zz.size() - 2]
                   << ',' << rs.gamma_max() << ',' << rs.gamma.size() << '\n';
            }
            run.emit(what + "_n" + std::to_string(n) + ".csv", os.str(), e);
        });
    }
}

void cmd_tails(Run& run, const std::string& what, std::int64_t censor) {
    const RunConfig& c = run.cfg();
    run.task("tails " + what, [&](json& e) {
        if (what != "tau" && what != "volume") throw ValidationError("--what must be tau or volume");
        if (censor < 1) throw ValidationError("--censor must be positive");
        const ModelParams p = ModelParams::from_alpha(c.alpha);
        const StepLaw law(p);
        Rng rng(c.seed, what == "tau" ? 1 : 2);
        std::vector<double> xs(static_cast<std::size_t>(c.samples));
        if (what == "tau") {
            for (auto& x : xs) x = static_cast<double>(sample_tau(law, rng, censor));
        } else {
            const PartitionFunction z(p.q);
            for (auto& x : xs) x = static_cast<double>(streamed_cluster_volume(law, p, z, rng, censor, 0, c.step_cap).size);
        }
        std::vector<double> grid;
        for (double x = 1.0; x < static_cast<double>(censor); x *= std::pow(10.0, 0.1)) grid.push_back(std::round(x));
        grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
        std::ostringstream os;
        os << "x,empirical_survival\n";
        for (auto [x, s] : empirical_survival(xs, grid)) os << num(x) << ',' << num(s) << '\n';
        run.emit("tails_" + what + ".csv", os.str(), e);
        const TailFit f = tail_exponent_estimate(xs, static_cast<double>(censor), 10.0);
        e["exponent"] = f.exponent;
        e["ci"] = {f.ci_low, f.ci_high};
        e["fit_range"] = {f.x_lo, f.x_hi};
    });
}

std::vector<double> log_grid(double lo, double hi, int points) {
    std::vector<double> t;
    for (int i = 0; i < points; ++i) {
        t.push_back(std::round(lo * std::pow(hi / lo, static_cast<double>(i) / (points - 1))));
    }
    return t;
}

// Walks from the root of conditioned clusters; returns the ensemble with distances from the root.
WalkEnsemble cluster_walks(const RunConfig& c, std::int64_t n, const ScalingConstants& sc, Rng& rng) {
    const ModelParams p = ModelParams::from_alpha(c.alpha);
    const PartitionFunction z(p.q);
    ConditioningOptions opt;
    opt.beta = sc.beta.value;
    opt.max_length = static_cast<std::int64_t>(std::ceil(c.window * opt.beta * static_cast<double>(n)));
    opt.caps = caps_of(c);
    WalkEnsemble w;
    for (std::int64_t i = 0; i < c.walk_traces; ++i) {
        const auto cc = sample_cluster_conditioned(n, mode_of(c), p, z, rng, opt);
        const auto d = bfs_distances(cc.cluster.graph, cc.cluster.root);
        w.traces.push_back(srw(cc.cluster.graph, cc.cluster.root, c.walk_steps, rng.split(static_cast<std::uint64_t>(i))));
        w.dist.emplace_back(d.begin(), d.end());
    }
    const double nn = static_cast<double>(n);
    w.time_scale = sc.theta.value * std::pow(nn, 1.5);
    w.space_scale = 1.0 / (sc.gamma.value * std::sqrt(nn));
    return w;
}

WalkEnsemble crt_walks(const RunConfig& c, Rng& rng, std::int64_t steps) {
    WalkEnsemble w;
    for (std::int64_t i = 0; i < c.walk_traces; ++i) {
        const auto exc = sample_excursion_fixed_lifetime(1.0, 1.0 / static_cast<double>(c.mesh_divisions), rng);
        const DiscretizedCrt crt = crt_from_excursion(exc, static_cast<std::int32_t>(c.crt_points), rng);
        const SpannedTree tree = spanned_tree(crt);
        w.traces.push_back(walk_on_crt(tree, tree.node_of_point[0], steps, rng));
        w.dist.push_back(tree.distances_from(tree.node_of_point[0]));
    }
    w.time_scale = 1.0;
    w.space_scale = 1.0;
    return w;
}

void cmd_walk(Run& run) {
    const RunConfig& c = run.cfg();
    std::unique_ptr<ScalingConstants> sc;
    run.task("scaling", [&](json&) { sc = std::make_unique<ScalingConstants>(constants_of(c)); });
    if (!sc) return;
    for (auto n : c.n_grid) {
        run.task("walk n=" + std::to_string(n), [&](json& e) {
            Rng rng(c.seed, static_cast<std::uint64_t>(n));
            const WalkEnsemble w = cluster_walks(c, n, *sc, rng);
            const auto times = log_grid(1.0, static_cast<double>(c.walk_steps), 25);
            std::ostringstream os;
            os << "trace_id,t,displacement\n";
            for (std::size_t i = 0; i < w.traces.size(); ++i) {
                for (double t : times) {
                    os << sample_id(c, n, static_cast<std::int64_t>(i)) << ',' << num(t) << ','
                       << num(w.dist[i][w.traces[i].at(t)]) << '\n';
                }
            }
            run.emit("walk_n" + std::to_string(n) + ".csv", os.str(), e);
            if (static_cast<std::int64_t>(w.traces.size()) >= 30) {
                const auto table = displacement_stats(w.traces, w.dist, log_grid(100.0, static_cast<double>(c.walk_steps), 13), rng);
                e["slope"] = table.slope;
                e["slope_se"] = table.slope_se;
            }
        });
    }
}

void cmd_compare(Run& run) {
    const RunConfig& c = run.cfg();
    run.task("compare", [&](json& e) {
        const ScalingConstants sc = constants_of(c);
        json out{{"times", {0.25, 0.5, 1.0}}, {"tables", json::array()}};
        Rng crng(c.seed, 0);
        for (auto n : c.n_grid) {
            Rng rng(c.seed, static_cast<std::uint64_t>(n));
            WalkEnsemble w = cluster_walks(c, n, sc, rng);
            if (static_cast<double>(c.walk_steps) < w.time_scale) {
                throw ValidationError("walk_steps " + std::to_string(c.walk_steps) + " is below theta n^(3/2) = " +
                                      num(w.time_scale) + " for n=" + std::to_string(n));
            }
            const WalkEnsemble crt = crt_walks(c, crng, c.walk_steps);
            json rows = json::array();
            for (const auto& r : path_law_comparison(w, crt)) {
                rows.push_back({{"t", r.t}, {"statistic", r.statistic}, {"p_value", r.p_value}});
            }
            out["tables"].push_back({{"n", n}, {"against", "crt"}, {"rows", rows}});
        }
        run.emit("compare.json", out.dump(2) + "\n", e);
        std::cout << out.dump(2) << "\n";
    });
}

void cmd_ghp(Run& run, const std::string& a, const std::string& b, bool exact) {
    run.task("ghp", [&](json& e) {
        const auto x = parse_space(read_file(a));
        const auto y = parse_space(read_file(b));
        const GhBounds g = gh_bounds(x, y, exact);
        const GhpResult r = ghp_upper(x, y, g.best);
        json out{{"gh_upper", g.upper},
                 {"gh_lower", g.lower},
                 {"ghp_upper", r.ghp_upper},
                 {"correspondence_size", g.best.pairs.size()},
                 {"distortion", r.distortion}};
        if (g.exact) out["exact"] = *g.exact;
        run.emit("ghp.json", out.dump(2) + "\n", e);
        std::cout << out.dump(2) << "\n";
    });
}

void cmd_crt(Run& run, double zeta) {
    const RunConfig& c = run.cfg();
    run.task("crt", [&](json& e) {
        Rng rng(c.seed, 0);
        double life = zeta;
        if (life <= 0.0) {
            do life = sample_lifetime(rng);
            while (life >= static_cast<double>(c.window));
        }
        const auto exc = sample_excursion_fixed_lifetime(life, life / static_cast<double>(c.mesh_divisions), rng);
        const DiscretizedCrt crt = crt_from_excursion(exc, static_cast<std::int32_t>(c.crt_points), rng);
        run.emit("crt.space", serialize_space(crt.space), e);
        e["zeta"] = life;
    });
}

int cmd_verify(Run& run, const std::string& suite, double scale, bool quiet) {
    const RunConfig& c = run.cfg();
    VerifyOptions opt;
    opt.scale = scale;
    opt.seed = c.seed;
    opt.alpha = c.alpha;
    if (!quiet) opt.progress = [](const std::string& m) { std::cerr << m << std::endl; };
    const auto ids = suite_criteria(suite);
    if (!(scale > 0.0)) throw DomainError("budget scale must be positive");
    std::vector<CriterionResult> results;
    for (const auto& id : ids) {
        run.task("verify " + id, [&](json& e) {
            results.push_back(run_criterion(id, opt));
            std::cout << format_result(results.back()) << std::flush;
            e["passed"] = results.back().passed();
            if (!results.back().passed()) run.fail(failure);
        });
    }
    json dummy;
    run.emit("verify_" + suite + ".json", report_json(suite, results) + "\n", dummy);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Critical percolation clusters on random planar triangulations: samplers and diagnostics"};
    app.require_subcommand(1);
    std::string config_file;
    std::vector<std::string> overrides;
    std::string out_dir;
    std::int64_t seed = -1;
    app.add_option("-c,--config", config_file, "flat key=value configuration file");
    app.add_option("-s,--set", overrides, "override a configuration key (key=value)");
    app.add_option("-o,--out", out_dir, "output directory");
    app.add_option("--seed", seed, "master seed");

    auto* constants = app.add_subcommand("constants", "exact constants and estimated scaling constants");
    auto* scaling = app.add_subcommand("scaling", "estimated scaling constants with standard errors");
    std::string what = "excursion";
    auto* sample = app.add_subcommand("sample", "conditioned excursions, peeling excursions or clusters");
    sample->add_option("--what", what, "excursion, peeling or cluster")->check(CLI::IsMember({"excursion", "peeling", "cluster"}));
    std::string tail_what = "tau";
    std::int64_t censor = 10000;
    auto* tails = app.add_subcommand("tails", "empirical survival functions");
    tails->add_option("--what", tail_what, "tau or volume")->check(CLI::IsMember({"tau", "volume"}));
    tails->add_option("--censor", censor, "right-censoring level");
    auto* walk = app.add_subcommand("walk", "simple random walks on conditioned clusters");
    std::string space_a, space_b;
    bool exact = false;
    auto* ghp = app.add_subcommand("ghp", "GH and GHP upper bounds between two serialized spaces");
    ghp->add_option("x", space_a, "first space")->required();
    ghp->add_option("y", space_b, "second space")->required();
    ghp->add_flag("--exact", exact, "exhaustive GH for small spaces");
    double zeta = 0.0;
    auto* crt = app.add_subcommand("crt", "discretized CRT in serialized-space format");
    crt->add_option("--zeta", zeta, "lifetime (sampled when omitted)");
    auto* compare = app.add_subcommand("compare", "KS tables of rescaled cluster walks against CRT walks");
    std::string suite = "oracle";
    double scale = 1.0;
    bool quiet = false;
    auto* verify = app.add_subcommand("verify", "acceptance suite report");
    verify->add_option("--suite", suite, "unit, oracle, statistical or all");
    verify->add_option("--scale", scale, "multiplier on every sample budget");
    verify->add_flag("-q,--quiet", quiet, "no progress on stderr");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? ok : usage;
    }

    RunConfig cfg;
    try {
        if (!config_file.empty()) cfg = RunConfig::parse(read_file(config_file));
        for (const auto& kv : overrides) {
            const auto eq = kv.find('=');
            if (eq == std::string::npos) throw ValidationError("--set expects key=value, got '" + kv + "'");
            cfg.set(kv.substr(0, eq), kv.substr(eq + 1));
        }
        if (!out_dir.empty()) cfg.out_dir = out_dir;
        if (seed >= 0) cfg.seed = static_cast<std::uint64_t>(seed);
        cfg.validate();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return usage;
    }

    const std::string command = app.get_subcommands().front()->get_name();
    Run run(command, cfg);
    try {
        if (*constants) cmd_constants(run, false);
        else if (*scaling) cmd_constants(run, true);
        else if (*sample) cmd_sample(run, what);
        else if (*tails) cmd_tails(run, tail_what, censor);
        else if (*walk) cmd_walk(run);
        else if (*ghp) cmd_ghp(run, space_a, space_b, exact);
        else if (*crt) cmd_crt(run, zeta);
        else if (*compare) cmd_compare(run);
        else if (*verify) cmd_verify(run, suite, scale, quiet);
    } catch (const CapExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return cap;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return usage;
    }
    const int code = run.finish();
    if (code != ok) std::cerr << "one or more tasks failed; see " << run.path("manifest.json") << "\n";
    return code;
}
