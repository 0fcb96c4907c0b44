#include "percolab/boltzmann.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <set>
#include <sstream>

#include "percolab/errors.hpp"

namespace percolab {

namespace {

using Map = PlanarTriangulationOfPolygon;
using Slots = std::vector<std::int32_t>;

std::vector<std::int32_t> face_ids(const Map& map, std::int32_t& count) {
    std::vector<std::int32_t> f(map.origin.size(), -1);
    count = 0;
    auto mark = [&](std::int32_t start) {
        std::int32_t h = start;
        do {
            f[h] = count;
            h = map.next[h];
        } while (h != start && f[h] == -1);
        ++count;
    };
    mark(map.root);
    for (std::int32_t h = 0; h < map.num_half_edges(); ++h) {
        if (f[h] == -1) mark(h);
    }
    return f;
}

/// Incremental construction of a triangulation by peeling open polygons.
class Builder {
public:
    explicit Builder(std::int32_t m) {
        map_.m = m;
        map_.num_vertices = m;
        Slots inner(m);
        for (std::int32_t i = 0; i < m; ++i) inner[i] = add(i);
        std::vector<std::int32_t> outer(m);
        for (std::int32_t i = 0; i < m; ++i) {
            outer[i] = add((i + 1) % m);
            pair(inner[i], outer[i]);
        }
        for (std::int32_t i = 0; i < m; ++i) map_.next[outer[i]] = outer[(i + m - 1) % m];
        map_.root = outer[0];
        pending.push_back(std::move(inner));
    }

    void glue(const Slots& s) {
        const std::int32_t t0 = map_.twin[s[0]];
        const std::int32_t t1 = map_.twin[s[1]];
        pair(t0, t1);
        dead_[s[0]] = 1;
        dead_[s[1]] = 1;
    }

    void peel_internal(const Slots& s) {
        const std::int32_t a0 = map_.origin[s[0]];
        const std::int32_t a1 = map_.origin[s[1]];
        const std::int32_t w = map_.num_vertices++;
        const std::int32_t x = add(a1), y = add(w);
        triangle(s[0], x, y);
        const std::int32_t xr = add(w), yr = add(a0);
        pair(x, xr);
        pair(y, yr);
        Slots p{yr, xr};
        p.insert(p.end(), s.begin() + 1, s.end());
        pending.push_back(std::move(p));
    }

    void peel_boundary(const Slots& s, std::size_t j) {
        const std::int32_t a0 = map_.origin[s[0]];
        const std::int32_t a1 = map_.origin[s[1]];
        const std::int32_t aj = map_.origin[s[j]];
        const std::int32_t x = add(a1), y = add(aj);
        triangle(s[0], x, y);
        const std::int32_t xr = add(aj), yr = add(a0);
        pair(x, xr);
        pair(y, yr);
        Slots p1{xr};
        p1.insert(p1.end(), s.begin() + 1, s.begin() + static_cast<std::ptrdiff_t>(j));
        Slots p2{yr};
        p2.insert(p2.end(), s.begin() + static_cast<std::ptrdiff_t>(j), s.end());
        pending.push_back(std::move(p2));
        pending.push_back(std::move(p1));
    }

    Map finish() const {
        std::vector<std::int32_t> id(map_.origin.size(), -1);
        std::int32_t c = 0;
        for (std::size_t h = 0; h < map_.origin.size(); ++h) {
            if (!dead_[h]) id[h] = c++;
        }
        Map out;
        out.m = map_.m;
        out.num_vertices = map_.num_vertices;
        out.origin.resize(c);
        out.twin.resize(c);
        out.next.resize(c);
        for (std::size_t h = 0; h < map_.origin.size(); ++h) {
            if (dead_[h]) continue;
            out.origin[id[h]] = map_.origin[h];
            out.twin[id[h]] = id[map_.twin[h]];
            out.next[id[h]] = id[map_.next[h]];
        }
        out.root = id[map_.root];
        std::int32_t nf = 0;
        out.face = face_ids(out, nf);
        return out;
    }

    std::vector<Slots> pending;

private:
    std::int32_t add(std::int32_t origin) {
        map_.origin.push_back(origin);
        map_.twin.push_back(-1);
        map_.next.push_back(-1);
        dead_.push_back(0);
        return static_cast<std::int32_t>(map_.origin.size()) - 1;
    }
    void pair(std::int32_t a, std::int32_t b) {
        map_.twin[a] = b;
        map_.twin[b] = a;
    }
    void triangle(std::int32_t a, std::int32_t b, std::int32_t c) {
        map_.next[a] = b;
        map_.next[b] = c;
        map_.next[c] = a;
    }

    Map map_;
    std::vector<char> dead_;
};

}  // namespace

std::int32_t PlanarTriangulationOfPolygon::num_faces() const {
    std::int32_t c = 0;
    for (auto f : face) c = std::max(c, f + 1);
    return c;
}

Graph PlanarTriangulationOfPolygon::graph() const {
    std::vector<std::pair<std::int32_t, std::int32_t>> e;
    e.reserve(origin.size() / 2);
    for (std::int32_t h = 0; h < num_half_edges(); ++h) {
        if (h < twin[h]) e.emplace_back(origin[h], origin[twin[h]]);
    }
    return Graph::from_edges(num_vertices, std::move(e));
}

void validate_triangulation(const Map& map) {
    auto fail = [](const std::string& what) { throw ValidationError("invalid triangulation: " + what); };
    const std::int32_t H = map.num_half_edges();
    if (map.m < 2) fail("boundary length below 2");
    if (static_cast<std::int32_t>(map.twin.size()) != H || static_cast<std::int32_t>(map.next.size()) != H)
        fail("array sizes differ");
    std::vector<std::int32_t> prev(H, -1);
    for (std::int32_t h = 0; h < H; ++h) {
        const std::int32_t t = map.twin[h];
        if (t < 0 || t >= H || t == h || map.twin[t] != h) fail("twin is not a fixed-point-free involution");
        const std::int32_t n = map.next[h];
        if (n < 0 || n >= H || prev[n] != -1) fail("next is not a permutation");
        prev[n] = h;
        if (map.origin[h] < 0 || map.origin[h] >= map.num_vertices) fail("origin out of range");
        if (map.origin[t] != map.dest(h)) fail("twin endpoints do not match");
        if (map.origin[h] == map.dest(h)) fail("self-loop");
    }
    // faces
    std::vector<char> seen(H, 0);
    std::int32_t faces = 0;
    for (std::int32_t start = 0; start < H; ++start) {
        if (seen[start]) continue;
        std::int32_t len = 0;
        std::int32_t h = start;
        do {
            seen[h] = 1;
            ++len;
            h = map.next[h];
        } while (h != start);
        ++faces;
        bool outer = false;
        h = start;
        do {
            outer = outer || h == map.root;
            h = map.next[h];
        } while (h != start);
        if (outer) {
            if (len != map.m) fail("outer face length differs from m");
        } else if (len != 3) {
            fail("inner face is not a triangle");
        }
    }
    // boundary is a simple cycle on vertices 0..m-1
    std::set<std::int32_t> bverts;
    std::int32_t h = map.root;
    do {
        bverts.insert(map.origin[h]);
        h = map.next[h];
    } while (h != map.root);
    if (static_cast<std::int32_t>(bverts.size()) != map.m || *bverts.rbegin() != map.m - 1)
        fail("boundary is not a simple cycle on vertices 0..m-1");
    // vertices: orbits of next o twin
    std::vector<char> vseen(H, 0);
    std::int32_t vertices = 0;
    std::vector<char> vertex_used(map.num_vertices, 0);
    for (std::int32_t start = 0; start < H; ++start) {
        if (vseen[start]) continue;
        ++vertices;
        const std::int32_t v = map.origin[start];
        if (vertex_used[v]) fail("vertex appears in two rotation orbits");
        vertex_used[v] = 1;
        std::int32_t g = start;
        do {
            vseen[g] = 1;
            if (map.origin[g] != v) fail("rotation orbit mixes vertices");
            g = map.next[map.twin[g]];
        } while (g != start);
    }
    if (vertices != map.num_vertices) fail("isolated or missing vertex");
    const std::int32_t E = H / 2;
    if (map.num_vertices - E + faces != 2) fail("Euler characteristic is not 2");
    const std::int32_t f_expected = map.m + 2 * map.internal_count() - 2;
    if (faces - 1 != f_expected) fail("triangle count mismatch");
}

std::vector<std::int32_t> canonical_code(const Map& map) {
    const std::int32_t H = map.num_half_edges();
    std::vector<std::int32_t> label(H, -1), order;
    order.reserve(H);
    label[map.root] = 0;
    order.push_back(map.root);
    for (std::size_t i = 0; i < order.size(); ++i) {
        const std::int32_t h = order[i];
        for (std::int32_t g : {map.next[h], map.twin[h]}) {
            if (label[g] == -1) {
                label[g] = static_cast<std::int32_t>(order.size());
                order.push_back(g);
            }
        }
    }
    std::vector<std::int32_t> code;
    code.reserve(2 * order.size() + 1);
    code.push_back(map.m);
    for (std::int32_t h : order) {
        code.push_back(label[map.next[h]]);
        code.push_back(label[map.twin[h]]);
    }
    return code;
}

std::vector<std::vector<unsigned __int128>> triangulation_counts(std::int32_t max_m, std::int32_t max_n) {
    if (max_m < 2 || max_n < 0) throw DomainError("triangulation_counts needs max_m >= 2, max_n >= 0");
    const std::int32_t top = max_m + max_n + 1;
    std::vector<std::vector<unsigned __int128>> z(top + 2, std::vector<unsigned __int128>(max_n + 1, 0));
    for (std::int32_t n = 0; n <= max_n; ++n) {
        for (std::int32_t m = 2; m <= top - n; ++m) {
            unsigned __int128 v = 0;
            if (n > 0) v += z[m + 1][n - 1];
            if (m == 2) {
                if (n == 0) v += 1;
            } else {
                for (std::int32_t j = 2; j <= m - 1; ++j) {
                    for (std::int32_t a = 0; a <= n; ++a) v += z[j][a] * z[m - j + 1][n - a];
                }
            }
            z[m][n] = v;
        }
    }
    z.resize(max_m + 1);
    return z;
}

double log_triangulation_count(std::int32_t m, std::int32_t n) {
    const double mp = m - 2;
    const double nd = n;
    return (nd + 1.0) * std::log(2.0) + std::lgamma(2 * mp + 2) + std::lgamma(2 * mp + 3 * nd + 1) -
           2.0 * std::lgamma(mp + 1) - std::lgamma(nd + 1) - std::lgamma(2 * mp + 2 * nd + 3);
}

namespace {

double log_add(double a, double b) {
    if (a == -INFINITY) return b;
    if (b == -INFINITY) return a;
    return a > b ? a + std::log1p(std::exp(b - a)) : b + std::log1p(std::exp(a - b));
}

double term_ratio(double mp, double n, double q) {
    return 2.0 * q * (2 * mp + 3 * n + 3) * (2 * mp + 3 * n + 2) * (2 * mp + 3 * n + 1) /
           ((n + 1) * (2 * mp + 2 * n + 4) * (2 * mp + 2 * n + 3));
}

}  // namespace

PartitionValue PartitionFunction::evaluate(std::int32_t m, double q) {
    if (!(q > 0.0 && q <= 2.0 / 27.0 + 1e-15)) {
        std::ostringstream os;
        os << "Boltzmann weight q must lie in (0, 2/27], got " << q;
        throw DomainError(os.str());
    }
    if (m < 2) throw DomainError("partition function needs m >= 2");
    const double mp = m - 2;
    const double limit = 13.5 * q;
    const bool critical = limit > 1.0 - 1e-9;
    PartitionValue out;
    double lt = log_triangulation_count(m, 0);
    double ls = lt;
    double lm = -INFINITY;  // log sum n t_n
    const double tiny = std::log(1e-18);
    for (std::int64_t n = 0;; ++n) {
        const double r = term_ratio(mp, static_cast<double>(n), q);
        lt += std::log(r);
        const double nn = static_cast<double>(n + 1);
        ls = log_add(ls, lt);
        lm = log_add(lm, std::log(nn) + lt);
        out.terms = n + 2;
        if (critical) {
            if (lt - ls < tiny + std::log(1e-3) || n > 20'000'000) {
                // t_n ~ C n^{-5/2}: tail ~ t_n * 2n/3
                out.rel_error = std::exp(lt - ls) * (2.0 * nn / 3.0 + 1.0);
                break;
            }
            continue;
        }
        if (r >= 1.0 || lt - ls > tiny) continue;
        double rbar = std::max(term_ratio(mp, nn, q), limit);
        bool monotone = true;
        const std::int64_t horizon = 4 * (n + m) + 100;
        for (std::int64_t j = n + 1; j < n + 1 + horizon; j += std::max<std::int64_t>(1, horizon / 200)) {
            if (term_ratio(mp, static_cast<double>(j), q) > rbar) {
                monotone = false;
                break;
            }
        }
        if (!monotone || rbar >= 1.0) continue;
        const double tail = std::exp(lt - ls) * rbar / (1.0 - rbar);
        out.rel_error = tail + 1e-15 * std::sqrt(static_cast<double>(n + 1));
        break;
    }
    out.log_value = ls;
    out.mean_internal = std::exp(lm - ls);
    return out;
}

PartitionFunction::PartitionFunction(double q) : q_(q) { evaluate(2, q); }

const PartitionValue& PartitionFunction::at(std::int32_t m) const {
    if (m < 2) throw DomainError("partition function needs m >= 2");
    std::lock_guard<std::mutex> lock(mutex_);
    while (static_cast<std::int32_t>(table_.size()) <= m - 2) {
        table_.push_back(evaluate(static_cast<std::int32_t>(table_.size()) + 2, q_));
    }
    return table_[m - 2];
}

PlanarTriangulationOfPolygon sample_boltzmann(std::int32_t m, const PartitionFunction& z, Rng& rng) {
    if (m < 2) throw DomainError("sample_boltzmann needs m >= 2");
    const double lq = std::log(z.q());
    Builder b(m);
    while (!b.pending.empty()) {
        Slots s = std::move(b.pending.back());
        b.pending.pop_back();
        const auto L = static_cast<std::int32_t>(s.size());
        const double lzl = z.log_z(L);
        double u = rng.uniform();
        if (L == 2) {
            if (u < std::exp(-lzl)) {
                b.glue(s);
            } else {
                b.peel_internal(s);
            }
            continue;
        }
        u -= std::exp(lq + z.log_z(L + 1) - lzl);
        if (u < 0.0) {
            b.peel_internal(s);
            continue;
        }
        std::int32_t j = 2;
        for (; j < L - 1; ++j) {
            u -= std::exp(z.log_z(j) + z.log_z(L - j + 1) - lzl);
            if (u < 0.0) break;
        }
        b.peel_boundary(s, static_cast<std::size_t>(j));
    }
    return b.finish();
}

namespace {

void enumerate_rec(Builder b, std::int32_t used, std::int32_t max_internal,
                   std::map<std::vector<std::int32_t>, Map>& found, std::int64_t& generated) {
    if (b.pending.empty()) {
        Map map = b.finish();
        ++generated;
        found.emplace(canonical_code(map), std::move(map));
        return;
    }
    Slots s = std::move(b.pending.back());
    b.pending.pop_back();
    // peel the last slot of each polygon; the sampler peels the first
    std::rotate(s.begin(), s.end() - 1, s.end());
    const std::size_t L = s.size();
    if (L == 2) {
        Builder c = b;
        c.glue(s);
        enumerate_rec(std::move(c), used, max_internal, found, generated);
    }
    if (used < max_internal) {
        Builder c = b;
        c.peel_internal(s);
        enumerate_rec(std::move(c), used + 1, max_internal, found, generated);
    }
    for (std::size_t j = 2; j <= L - 1; ++j) {
        Builder c = b;
        c.peel_boundary(s, j);
        enumerate_rec(std::move(c), used, max_internal, found, generated);
    }
}

}  // namespace

EnumerationResult enumerate_triangulations(std::int32_t m, std::int32_t max_internal) {
    if (m < 2 || m > 5 || max_internal < 0 || max_internal > 3) {
        throw DomainError("enumeration limited to 2 <= m <= 5 and max_internal <= 3");
    }
    std::map<std::vector<std::int32_t>, Map> found;
    EnumerationResult r;
    r.m = m;
    r.max_internal = max_internal;
    enumerate_rec(Builder(m), 0, max_internal, found, r.generated);
    r.count_by_internal.assign(max_internal + 1, 0);
    for (auto& [code, map] : found) {
        ++r.count_by_internal[map.internal_count()];
        r.maps.push_back(std::move(map));
    }
    return r;
}

std::vector<Color> all_black(std::int32_t m) { return std::vector<Color>(m, Color::black); }

std::vector<Color> mixed_boundary(std::int32_t black, std::int32_t white) {
    std::vector<Color> c(black, Color::black);
    c.insert(c.end(), white, Color::white);
    return c;
}

ColoredMap percolate(PlanarTriangulationOfPolygon map, double p, std::vector<Color> boundary, Rng& rng) {
    if (static_cast<std::int32_t>(boundary.size()) != map.m) {
        std::ostringstream os;
        os << "boundary descriptor has length " << boundary.size() << " but the map boundary has length "
           << map.m;
        throw ValidationError(os.str());
    }
    ColoredMap out;
    out.color.resize(map.num_vertices);
    for (std::int32_t v = 0; v < map.m; ++v) out.color[v] = boundary[v];
    for (std::int32_t v = map.m; v < map.num_vertices; ++v) {
        out.color[v] = rng.bernoulli(p) ? Color::black : Color::white;
    }
    out.map = std::move(map);
    out.boundary = std::move(boundary);
    return out;
}

std::vector<std::int32_t> black_component(const Graph& g, const std::vector<Color>& color,
                                          const std::vector<std::int32_t>& sources) {
    std::vector<char> seen(g.num_vertices(), 0);
    std::vector<std::int32_t> out;
    for (auto s : sources) {
        if (color[s] != Color::black) throw ValidationError("black_component source is not black");
        if (!seen[s]) {
            seen[s] = 1;
            out.push_back(s);
        }
    }
    for (std::size_t i = 0; i < out.size(); ++i) {
        for (auto v : g.neighbors(out[i])) {
            if (!seen[v] && color[v] == Color::black) {
                seen[v] = 1;
                out.push_back(v);
            }
        }
    }
    return out;
}

std::string serialize_map(const Map& map) {
    std::ostringstream os;
    os << "triangulation " << map.m << ' ' << map.num_vertices << ' ' << map.num_half_edges() << ' ' << map.root
       << '\n';
    for (std::int32_t h = 0; h < map.num_half_edges(); ++h) {
        os << map.origin[h] << ' ' << map.twin[h] << ' ' << map.next[h] << '\n';
    }
    return os.str();
}

Map parse_map(const std::string& text) {
    std::istringstream is(text);
    std::string tag;
    Map map;
    std::int32_t H = 0;
    if (!(is >> tag >> map.m >> map.num_vertices >> H >> map.root) || tag != "triangulation") {
        throw ValidationError("bad map header");
    }
    map.origin.resize(H);
    map.twin.resize(H);
    map.next.resize(H);
    for (std::int32_t h = 0; h < H; ++h) {
        if (!(is >> map.origin[h] >> map.twin[h] >> map.next[h])) throw ValidationError("truncated map record");
    }
    std::int32_t nf = 0;
    map.face = face_ids(map, nf);
    validate_triangulation(map);
    return map;
}

}  // namespace percolab
