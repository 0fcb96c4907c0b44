#include "percolab/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>
#include <string>

#include <Eigen/Dense>
#include <Eigen/IterativeLinearSolvers>
#include <Eigen/SparseCholesky>

#include "percolab/errors.hpp"
#include "percolab/rng.hpp"

namespace percolab {

std::vector<std::int32_t> bfs_distances(const Graph& g, std::int32_t source) {
    std::vector<std::int32_t> dist(g.num_vertices(), -1);
    std::vector<std::int32_t> queue{source};
    queue.reserve(g.num_vertices());
    dist[source] = 0;
    for (std::size_t i = 0; i < queue.size(); ++i) {
        const auto u = queue[i];
        for (auto v : g.neighbors(u)) {
            if (dist[v] < 0) {
                dist[v] = dist[u] + 1;
                queue.push_back(v);
            }
        }
    }
    return dist;
}

std::vector<std::int32_t> graph_distance(const Graph& g, const std::vector<std::int32_t>& sources) {
    if (sources.empty()) throw ValidationError("graph_distance needs at least one source");
    std::vector<std::int32_t> dist(g.num_vertices(), -1);
    std::vector<std::int32_t> queue;
    queue.reserve(g.num_vertices());
    for (auto s : sources) {
        if (s < 0 || s >= g.num_vertices()) throw ValidationError("source vertex out of range");
        if (dist[s] < 0) {
            dist[s] = 0;
            queue.push_back(s);
        }
    }
    for (std::size_t i = 0; i < queue.size(); ++i) {
        const auto u = queue[i];
        for (auto v : g.neighbors(u)) {
            if (dist[v] < 0) {
                dist[v] = dist[u] + 1;
                queue.push_back(v);
            }
        }
    }
    for (std::int32_t v = 0; v < g.num_vertices(); ++v) {
        if (dist[v] < 0) throw ValidationError("graph is disconnected: vertex " + std::to_string(v) + " is unreachable");
    }
    return dist;
}

using SpMat = Eigen::SparseMatrix<double>;

struct ResistanceSolver::Impl {
    std::int32_t ground = 0;
    std::vector<std::int32_t> tree_dist;  // set for trees
    std::vector<std::int32_t> index;      // reduced index, -1 for the ground
    bool iterative = false;
    Eigen::SimplicialLDLT<SpMat> direct;
    Eigen::ConjugateGradient<SpMat, Eigen::Lower | Eigen::Upper, Eigen::DiagonalPreconditioner<double>> cg;
    SpMat lap;
};

ResistanceSolver::ResistanceSolver(const Graph& g, std::int32_t ground) : impl_(std::make_unique<Impl>()) {
    const std::int32_t n = g.num_vertices();
    if (ground < 0 || ground >= n) throw ValidationError("ground vertex out of range");
    impl_->ground = ground;
    auto dist = graph_distance(g, {ground});
    if (g.is_tree()) {
        impl_->tree_dist = std::move(dist);
        return;
    }
    impl_->index.assign(n, -1);
    std::int32_t m = 0;
    for (std::int32_t v = 0; v < n; ++v) {
        if (v != ground) impl_->index[v] = m++;
    }
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(static_cast<std::size_t>(2 * g.num_edges() + n));
    for (std::int32_t v = 0; v < n; ++v) {
        const auto iv = impl_->index[v];
        if (iv < 0) continue;
        trip.emplace_back(iv, iv, static_cast<double>(g.degree(v)));
        for (auto w : g.neighbors(v)) {
            const auto iw = impl_->index[w];
            if (iw >= 0) trip.emplace_back(iv, iw, -1.0);
        }
    }
    impl_->lap.resize(m, m);
    impl_->lap.setFromTriplets(trip.begin(), trip.end());
    impl_->iterative = n >= direct_limit;
    if (impl_->iterative) {
        impl_->cg.setTolerance(tolerance);
        impl_->cg.setMaxIterations(std::max<Eigen::Index>(1000, 20 * static_cast<Eigen::Index>(m)));
        impl_->cg.compute(impl_->lap);
    } else {
        impl_->direct.compute(impl_->lap);
        if (impl_->direct.info() != Eigen::Success) throw std::runtime_error("Laplacian factorisation failed");
    }
}

ResistanceSolver::~ResistanceSolver() = default;
ResistanceSolver::ResistanceSolver(ResistanceSolver&&) noexcept = default;
ResistanceSolver& ResistanceSolver::operator=(ResistanceSolver&&) noexcept = default;

bool ResistanceSolver::iterative() const { return impl_->iterative; }

double ResistanceSolver::to(std::int32_t v) const {
    if (v == impl_->ground) return 0.0;
    if (!impl_->tree_dist.empty()) return impl_->tree_dist.at(v);
    const auto iv = impl_->index.at(v);
    Eigen::VectorXd b = Eigen::VectorXd::Zero(impl_->lap.rows());
    b[iv] = 1.0;
    Eigen::VectorXd x;
    if (impl_->iterative) {
        x = impl_->cg.solve(b);
        if (impl_->cg.info() != Eigen::Success) {
            const double residual = (impl_->lap * x - b).norm();
            throw std::runtime_error("conjugate gradient did not converge, residual " + std::to_string(residual));
        }
    } else {
        x = impl_->direct.solve(b);
    }
    return x[iv];
}

std::vector<double> effective_resistance(const Graph& g,
                                         const std::vector<std::pair<std::int32_t, std::int32_t>>& pairs) {
    std::vector<double> out(pairs.size());
    // group by first vertex so each ground is factorised once
    std::vector<std::size_t> order(pairs.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return pairs[a].first < pairs[b].first; });
    std::unique_ptr<ResistanceSolver> solver;
    std::int32_t current = -1;
    for (auto i : order) {
        if (pairs[i].first != current) {
            current = pairs[i].first;
            solver = std::make_unique<ResistanceSolver>(g, current);
        }
        out[i] = solver->to(pairs[i].second);
    }
    return out;
}

double kirchhoff_resistance(const Graph& g, std::int32_t u, std::int32_t v) {
    if (u == v) return 0.0;
    const std::int32_t n = g.num_vertices();
    Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(n, n);
    for (std::int32_t a = 0; a < n; ++a) {
        lap(a, a) = g.degree(a);
        for (auto b : g.neighbors(a)) lap(a, b) = -1.0;
    }
    auto minor = [&](std::vector<std::int32_t> drop) {
        std::vector<std::int32_t> keep;
        for (std::int32_t a = 0; a < n; ++a) {
            if (std::find(drop.begin(), drop.end(), a) == drop.end()) keep.push_back(a);
        }
        const auto k = static_cast<Eigen::Index>(keep.size());
        if (k == 0) return 1.0;
        Eigen::MatrixXd m(k, k);
        for (Eigen::Index i = 0; i < k; ++i) {
            for (Eigen::Index j = 0; j < k; ++j) m(i, j) = lap(keep[i], keep[j]);
        }
        return m.fullPivLu().determinant();
    };
    const double trees = minor({u});
    if (std::abs(trees) < 0.5) throw ValidationError("graph is disconnected");
    return minor({u, v}) / trees;
}

Measures measures(const Graph& g) {
    Measures m;
    m.counting.assign(g.num_vertices(), 1.0);
    m.degree.resize(g.num_vertices());
    for (std::int32_t v = 0; v < g.num_vertices(); ++v) m.degree[v] = g.degree(v);
    return m;
}

double FiniteMetricMeasureSpace::diameter() const {
    return d.empty() ? 0.0 : *std::max_element(d.begin(), d.end());
}

double FiniteMetricMeasureSpace::radius() const {
    double r = 0.0;
    for (std::int32_t j = 0; j < n; ++j) r = std::max(r, dist(root, j));
    return r;
}

double FiniteMetricMeasureSpace::total_mass() const { return std::accumulate(mass.begin(), mass.end(), 0.0); }

void FiniteMetricMeasureSpace::validate(std::int64_t triples, std::uint64_t seed) const {
    if (static_cast<std::int64_t>(d.size()) != static_cast<std::int64_t>(n) * n) {
        throw ValidationError("distance matrix has the wrong size");
    }
    if (static_cast<std::int32_t>(mass.size()) != n) throw ValidationError("mass vector has the wrong size");
    if (root < 0 || root >= n) throw ValidationError("root out of range");
    const double tol = 1e-9;
    for (std::int32_t i = 0; i < n; ++i) {
        if (mass[i] < 0) throw ValidationError("negative mass at point " + std::to_string(i));
        if (dist(i, i) != 0.0) throw ValidationError("non-zero diagonal at point " + std::to_string(i));
        for (std::int32_t j = 0; j < n; ++j) {
            if (std::abs(dist(i, j) - dist(j, i)) > tol) throw ValidationError("asymmetric distance");
        }
    }
    auto check = [&](std::int32_t a, std::int32_t b, std::int32_t c) {
        if (dist(a, c) > dist(a, b) + dist(b, c) + tol) {
            throw ValidationError("triangle inequality fails at (" + std::to_string(a) + "," + std::to_string(b) +
                                  "," + std::to_string(c) + ")");
        }
    };
    if (triples < 0) {
        for (std::int32_t a = 0; a < n; ++a)
            for (std::int32_t b = 0; b < n; ++b)
                for (std::int32_t c = 0; c < n; ++c) check(a, b, c);
    } else if (n > 0) {
        Rng rng(seed);
        for (std::int64_t t = 0; t < triples; ++t) {
            check(static_cast<std::int32_t>(rng.below(n)), static_cast<std::int32_t>(rng.below(n)),
                  static_cast<std::int32_t>(rng.below(n)));
        }
    }
}

FiniteMetricMeasureSpace FiniteMetricMeasureSpace::from_graph(const Graph& g, std::int32_t root,
                                                              const std::vector<double>& mass, double scale) {
    FiniteMetricMeasureSpace s;
    s.n = g.num_vertices();
    s.root = root;
    s.mass = mass;
    s.d.resize(static_cast<std::size_t>(s.n) * s.n);
    for (std::int32_t i = 0; i < s.n; ++i) {
        const auto di = graph_distance(g, {i});
        for (std::int32_t j = 0; j < s.n; ++j) s.d[static_cast<std::size_t>(i) * s.n + j] = scale * di[j];
    }
    return s;
}

FiniteMetricMeasureSpace FiniteMetricMeasureSpace::point() {
    FiniteMetricMeasureSpace s;
    s.n = 1;
    s.d = {0.0};
    s.mass = {1.0};
    return s;
}

void check_covering(const Correspondence& r, const FiniteMetricMeasureSpace& x, const FiniteMetricMeasureSpace& y) {
    std::vector<char> cx(x.n, 0), cy(y.n, 0);
    for (auto [a, b] : r.pairs) {
        if (a < 0 || a >= x.n || b < 0 || b >= y.n) throw ValidationError("correspondence pair out of range");
        cx[a] = 1;
        cy[b] = 1;
    }
    for (std::int32_t i = 0; i < x.n; ++i) {
        if (!cx[i]) throw ValidationError("correspondence misses point " + std::to_string(i) + " of the first space");
    }
    for (std::int32_t j = 0; j < y.n; ++j) {
        if (!cy[j]) throw ValidationError("correspondence misses point " + std::to_string(j) + " of the second space");
    }
}

double relation_distortion(const std::vector<std::pair<std::int32_t, std::int32_t>>& pairs,
                           const FiniteMetricMeasureSpace& x, const FiniteMetricMeasureSpace& y) {
    double dis = 0.0;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        for (std::size_t j = i + 1; j < pairs.size(); ++j) {
            dis = std::max(dis, std::abs(x.dist(pairs[i].first, pairs[j].first) -
                                         y.dist(pairs[i].second, pairs[j].second)));
        }
    }
    return dis;
}

double distortion(const Correspondence& r, const FiniteMetricMeasureSpace& x, const FiniteMetricMeasureSpace& y) {
    check_covering(r, x, y);
    return relation_distortion(r.pairs, x, y);
}

namespace {

// for each point of a, the point of b whose root distance is closest
std::vector<std::int32_t> profile_match(const FiniteMetricMeasureSpace& a, const FiniteMetricMeasureSpace& b) {
    std::vector<std::int32_t> order(b.n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](auto i, auto j) { return b.dist(b.root, i) < b.dist(b.root, j); });
    std::vector<std::int32_t> match(a.n);
    for (std::int32_t i = 0; i < a.n; ++i) {
        const double r = a.dist(a.root, i);
        auto it = std::lower_bound(order.begin(), order.end(), r,
                                   [&](std::int32_t j, double v) { return b.dist(b.root, j) < v; });
        std::int32_t best = it == order.end() ? order.back() : *it;
        if (it != order.begin()) {
            const auto prev = *(it - 1);
            if (it == order.end() || std::abs(b.dist(b.root, prev) - r) <= std::abs(b.dist(b.root, best) - r)) {
                best = prev;
            }
        }
        match[i] = i == a.root ? b.root : best;
    }
    return match;
}

void enumerate_maps(std::int32_t from_n, std::int32_t from_root, std::int32_t to_n, std::int32_t to_root,
                    std::vector<std::vector<std::int32_t>>& out) {
    std::vector<std::int32_t> f(from_n, 0);
    f[from_root] = to_root;
    std::vector<std::int32_t> free;
    for (std::int32_t i = 0; i < from_n; ++i) {
        if (i != from_root) free.push_back(i);
    }
    while (true) {
        out.push_back(f);
        std::size_t p = 0;
        while (p < free.size() && f[free[p]] == to_n - 1) f[free[p++]] = 0;
        if (p == free.size()) break;
        ++f[free[p]];
    }
}

}  // namespace

std::pair<double, Correspondence> gh_exact(const FiniteMetricMeasureSpace& x, const FiniteMetricMeasureSpace& y) {
    if (x.n > gh_exact_limit || y.n > gh_exact_limit) {
        throw DomainError("exact Gromov-Hausdorff search is limited to " + std::to_string(gh_exact_limit) +
                          " points per space");
    }
    // a minimal correspondence can be taken as the union of the graphs of f: X->Y and g: Y->X
    std::vector<std::vector<std::int32_t>> fs, gs;
    enumerate_maps(x.n, x.root, y.n, y.root, fs);
    enumerate_maps(y.n, y.root, x.n, x.root, gs);
    auto dis_map = [](const std::vector<std::int32_t>& f, const FiniteMetricMeasureSpace& a,
                      const FiniteMetricMeasureSpace& b) {
        double d = 0.0;
        for (std::int32_t i = 0; i < a.n; ++i)
            for (std::int32_t j = i + 1; j < a.n; ++j) d = std::max(d, std::abs(a.dist(i, j) - b.dist(f[i], f[j])));
        return d;
    };
    std::vector<std::pair<double, std::size_t>> df, dg;
    for (std::size_t i = 0; i < fs.size(); ++i) df.emplace_back(dis_map(fs[i], x, y), i);
    for (std::size_t i = 0; i < gs.size(); ++i) dg.emplace_back(dis_map(gs[i], y, x), i);
    std::sort(df.begin(), df.end());
    std::sort(dg.begin(), dg.end());
    double best = std::numeric_limits<double>::infinity();
    std::size_t bf = 0, bg = 0;
    for (const auto& [dfv, fi] : df) {
        if (dfv >= best) break;
        const auto& f = fs[fi];
        for (const auto& [dgv, gi] : dg) {
            if (std::max(dfv, dgv) >= best) break;
            const auto& g = gs[gi];
            double d = std::max(dfv, dgv);
            for (std::int32_t a = 0; a < x.n && d < best; ++a)
                for (std::int32_t b = 0; b < y.n; ++b) d = std::max(d, std::abs(x.dist(a, g[b]) - y.dist(f[a], b)));
            if (d < best) {
                best = d;
                bf = fi;
                bg = gi;
            }
        }
    }
    Correspondence r;
    for (std::int32_t a = 0; a < x.n; ++a) r.pairs.emplace_back(a, fs[bf][a]);
    for (std::int32_t b = 0; b < y.n; ++b) r.pairs.emplace_back(gs[bg][b], b);
    std::sort(r.pairs.begin(), r.pairs.end());
    r.pairs.erase(std::unique(r.pairs.begin(), r.pairs.end()), r.pairs.end());
    return {best / 2.0, r};
}

GhBounds gh_bounds(const FiniteMetricMeasureSpace& x, const FiniteMetricMeasureSpace& y, bool exact) {
    GhBounds out;
    const auto f = profile_match(x, y);
    const auto g = profile_match(y, x);
    for (std::int32_t a = 0; a < x.n; ++a) out.best.pairs.emplace_back(a, f[a]);
    for (std::int32_t b = 0; b < y.n; ++b) out.best.pairs.emplace_back(g[b], b);
    out.best.pairs.emplace_back(x.root, y.root);
    std::sort(out.best.pairs.begin(), out.best.pairs.end());
    out.best.pairs.erase(std::unique(out.best.pairs.begin(), out.best.pairs.end()), out.best.pairs.end());
    out.upper = distortion(out.best, x, y) / 2.0;
    out.lower = std::max(std::abs(x.diameter() - y.diameter()), std::abs(x.radius() - y.radius())) / 2.0;
    if (exact) {
        auto [value, corr] = gh_exact(x, y);
        out.exact = value;
        out.upper = value;
        out.lower = value;
        out.best = std::move(corr);
    }
    return out;
}

namespace {

// Dinic max flow with real capacities
class MaxFlow {
public:
    explicit MaxFlow(std::int32_t n) : head_(n, -1), level_(n), it_(n) {}

    void add_edge(std::int32_t u, std::int32_t v, double cap) {
        to_.push_back(v);
        cap_.push_back(cap);
        next_.push_back(head_[u]);
        head_[u] = static_cast<std::int32_t>(to_.size()) - 1;
        to_.push_back(u);
        cap_.push_back(0.0);
        next_.push_back(head_[v]);
        head_[v] = static_cast<std::int32_t>(to_.size()) - 1;
    }

    double run(std::int32_t s, std::int32_t t) {
        double flow = 0.0;
        while (bfs(s, t)) {
            it_ = head_;
            while (true) {
                const double f = dfs(s, t, std::numeric_limits<double>::infinity());
                if (f <= eps_) break;
                flow += f;
            }
        }
        return flow;
    }

private:
    static constexpr double eps_ = 1e-15;

    bool bfs(std::int32_t s, std::int32_t t) {
        std::fill(level_.begin(), level_.end(), -1);
        std::queue<std::int32_t> q;
        level_[s] = 0;
        q.push(s);
        while (!q.empty()) {
            const auto u = q.front();
            q.pop();
            for (auto e = head_[u]; e >= 0; e = next_[e]) {
                if (cap_[e] > eps_ && level_[to_[e]] < 0) {
                    level_[to_[e]] = level_[u] + 1;
                    q.push(to_[e]);
                }
            }
        }
        return level_[t] >= 0;
    }

    double dfs(std::int32_t u, std::int32_t t, double f) {
        if (u == t) return f;
        for (auto& e = it_[u]; e >= 0; e = next_[e]) {
            const auto v = to_[e];
            if (cap_[e] > eps_ && level_[v] == level_[u] + 1) {
                const double d = dfs(v, t, std::min(f, cap_[e]));
                if (d > eps_) {
                    cap_[e] -= d;
                    cap_[e ^ 1] += d;
                    return d;
                }
            }
        }
        return 0.0;
    }

    std::vector<std::int32_t> head_, level_, it_, to_, next_;
    std::vector<double> cap_;
};

double coupling_flow(const std::vector<double>& joint, const std::vector<double>& a, const std::vector<double>& b,
                     double eps) {
    const auto na = static_cast<std::int32_t>(a.size());
    const auto nb = static_cast<std::int32_t>(b.size());
    const std::size_t stride = static_cast<std::size_t>(na + nb);
    const std::int32_t s = na + nb, t = na + nb + 1;
    MaxFlow mf(na + nb + 2);
    const double big = std::accumulate(a.begin(), a.end(), 0.0) + std::accumulate(b.begin(), b.end(), 0.0) + 1.0;
    for (std::int32_t i = 0; i < na; ++i) {
        if (a[i] <= 0) continue;
        mf.add_edge(s, i, a[i]);
        for (std::int32_t j = 0; j < nb; ++j) {
            if (b[j] > 0 && joint[i * stride + na + j] <= eps) mf.add_edge(i, na + j, big);
        }
    }
    for (std::int32_t j = 0; j < nb; ++j) {
        if (b[j] > 0) mf.add_edge(na + j, t, b[j]);
    }
    return mf.run(s, t);
}

}  // namespace

bool prohorov_feasible(const std::vector<double>& joint, const std::vector<double>& a, const std::vector<double>& b,
                       double eps) {
    const double m = std::max(std::accumulate(a.begin(), a.end(), 0.0), std::accumulate(b.begin(), b.end(), 0.0));
    return coupling_flow(joint, a, b, eps) >= m - eps - 1e-9;
}

double prohorov_distance(const std::vector<double>& joint, const std::vector<double>& a,
                         const std::vector<double>& b) {
    const auto na = a.size(), nb = b.size();
    const std::size_t stride = na + nb;
    if (joint.size() != stride * stride) throw ValidationError("joint metric has the wrong size");
    const double m = std::max(std::accumulate(a.begin(), a.end(), 0.0), std::accumulate(b.begin(), b.end(), 0.0));
    std::vector<double> cand{0.0};
    for (std::size_t i = 0; i < na; ++i) {
        if (a[i] <= 0) continue;
        for (std::size_t j = 0; j < nb; ++j) {
            if (b[j] > 0) cand.push_back(joint[i * stride + na + j]);
        }
    }
    std::sort(cand.begin(), cand.end());
    cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
    // on [cand[i], cand[i+1]) the flow is constant; the first interval containing a feasible
    // epsilon gives the distance
    auto value_at = [&](std::size_t i) { return std::max(cand[i], m - coupling_flow(joint, a, b, cand[i])); };
    auto ok = [&](std::size_t i) {
        return i + 1 == cand.size() || m - coupling_flow(joint, a, b, cand[i]) < cand[i + 1];
    };
    std::size_t lo = 0, hi = cand.size() - 1;
    while (lo < hi) {
        const auto mid = (lo + hi) / 2;
        if (ok(mid)) hi = mid;
        else lo = mid + 1;
    }
    return std::min(value_at(lo), m);
}

GhpResult ghp_upper(const FiniteMetricMeasureSpace& x, const FiniteMetricMeasureSpace& y, const Correspondence& r) {
    GhpResult out;
    out.distortion = distortion(r, x, y);
    out.gh_upper = out.distortion / 2.0;
    const std::size_t N = static_cast<std::size_t>(x.n + y.n);
    std::vector<double> joint(N * N, 0.0);
    for (std::int32_t i = 0; i < x.n; ++i)
        for (std::int32_t j = 0; j < x.n; ++j) joint[i * N + j] = x.dist(i, j);
    for (std::int32_t i = 0; i < y.n; ++i)
        for (std::int32_t j = 0; j < y.n; ++j) joint[(x.n + i) * N + x.n + j] = y.dist(i, j);
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> reach(y.n);
    for (std::int32_t i = 0; i < x.n; ++i) {
        std::fill(reach.begin(), reach.end(), inf);
        for (auto [u, v] : r.pairs) reach[v] = std::min(reach[v], x.dist(i, u));
        for (std::int32_t j = 0; j < y.n; ++j) {
            double best = inf;
            for (std::int32_t v = 0; v < y.n; ++v) {
                if (reach[v] < inf) best = std::min(best, reach[v] + y.dist(v, j));
            }
            const double dij = out.gh_upper + best;
            joint[i * N + x.n + j] = dij;
            joint[(x.n + j) * N + i] = dij;
        }
    }
    double hx = 0.0, hy = 0.0;
    for (std::int32_t i = 0; i < x.n; ++i) {
        double m = inf;
        for (std::int32_t j = 0; j < y.n; ++j) m = std::min(m, joint[i * N + x.n + j]);
        hx = std::max(hx, m);
    }
    for (std::int32_t j = 0; j < y.n; ++j) {
        double m = inf;
        for (std::int32_t i = 0; i < x.n; ++i) m = std::min(m, joint[i * N + x.n + j]);
        hy = std::max(hy, m);
    }
    out.hausdorff = std::max(hx, hy);
    out.prohorov = prohorov_distance(joint, x.mass, y.mass);
    out.root_term = joint[x.root * N + x.n + y.root];
    out.ghp_upper = out.hausdorff + out.prohorov + out.root_term;
    return out;
}

Correspondence coding_correspondence(const std::vector<std::int32_t>& vertex_of_time, double n,
                                     const std::vector<double>& times, std::int32_t root,
                                     std::int32_t root_index) {
    if (vertex_of_time.empty() || vertex_of_time.front() != root) {
        throw ValidationError("coding labels do not start at the root");
    }
    if (!(n > 0)) throw DomainError("time scale must be positive");
    Correspondence r;
    r.pairs.emplace_back(root, root_index);
    for (std::size_t j = 0; j < times.size(); ++j) {
        if (times[j] < 0) throw ValidationError("negative coding time");
        const double i = std::floor(times[j] * n);
        const auto v = i < static_cast<double>(vertex_of_time.size()) ? vertex_of_time[static_cast<std::size_t>(i)] : root;
        r.pairs.emplace_back(v, static_cast<std::int32_t>(j));
    }
    return r;
}

}  // namespace percolab
