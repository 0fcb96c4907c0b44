#include "percolab/io.hpp"

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "percolab/errors.hpp"

namespace percolab {

namespace {

std::string num(double x) {
    char buf[32];
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, p);
}

template <class T>
T parse_number(const std::string& key, const std::string& v) {
    T out{};
    auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || p != v.data() + v.size()) throw ValidationError("bad value for " + key + ": '" + v + "'");
    return out;
}

}  // namespace

std::string serialize_space(const FiniteMetricMeasureSpace& s) {
    std::ostringstream os;
    os << "space " << s.n << ' ' << s.root << "\nmass";
    for (double m : s.mass) os << ' ' << num(m);
    os << '\n';
    for (std::int32_t i = 0; i < s.n; ++i) {
        for (std::int32_t j = 0; j < s.n; ++j) os << (j ? " " : "") << num(s.dist(i, j));
        os << '\n';
    }
    return os.str();
}

FiniteMetricMeasureSpace parse_space(const std::string& text) {
    std::istringstream is(text);
    std::string tag;
    FiniteMetricMeasureSpace s;
    if (!(is >> tag >> s.n >> s.root) || tag != "space" || s.n < 0) throw ValidationError("bad space header");
    if (!(is >> tag) || tag != "mass") throw ValidationError("missing mass line");
    s.mass.resize(s.n);
    for (auto& m : s.mass) {
        if (!(is >> m)) throw ValidationError("truncated mass line");
    }
    s.d.resize(static_cast<std::size_t>(s.n) * s.n);
    for (auto& x : s.d) {
        if (!(is >> x)) throw ValidationError("truncated distance matrix");
    }
    s.validate(1000);
    return s;
}

std::string serialize_tree(const TwoTypeTree& t) {
    std::ostringstream os;
    os << "tree " << t.size() << '\n';
    for (std::int32_t v = 0; v < t.size(); ++v) os << (v ? " " : "") << t.parent(v);
    os << '\n';
    return os.str();
}

TwoTypeTree parse_tree(const std::string& text) {
    std::istringstream is(text);
    std::string tag;
    std::int32_t n = 0;
    if (!(is >> tag >> n) || tag != "tree" || n < 1) throw ValidationError("bad tree header");
    std::vector<std::int32_t> parent(n);
    for (auto& p : parent) {
        if (!(is >> p)) throw ValidationError("truncated parent list");
    }
    TwoTypeTree t;
    for (std::int32_t v = 0; v < n; ++v) {
        if (parent[v] < 0) {
            if (v != 0) throw ValidationError("the root must be vertex 0");
            t.add_root();
        } else {
            t.add_detached();
        }
    }
    // children are appended in vertex order, which fixes the plane order
    for (std::int32_t v = 1; v < n; ++v) {
        if (parent[v] < 0 || parent[v] >= n || parent[v] == v) throw ValidationError("bad parent index");
        t.append_child(parent[v], v);
    }
    t.finalize();
    return t;
}

std::string serialize_path(const LatticePath& p) {
    std::ostringstream os;
    os << "path " << (p.kind == PathKind::tree ? "tree" : p.kind == PathKind::peeling ? "peeling" : "reversed")
       << ' ' << p.z.size() << '\n';
    for (std::size_t i = 0; i < p.z.size(); ++i) os << (i ? " " : "") << p.z[i];
    os << '\n';
    return os.str();
}

LatticePath parse_path(const std::string& text) {
    std::istringstream is(text);
    std::string tag, kind;
    std::size_t n = 0;
    if (!(is >> tag >> kind >> n) || tag != "path") throw ValidationError("bad path header");
    LatticePath p;
    if (kind == "tree") p.kind = PathKind::tree;
    else if (kind == "peeling") p.kind = PathKind::peeling;
    else if (kind == "reversed") p.kind = PathKind::reversed;
    else throw ValidationError("unknown path kind " + kind);
    p.z.resize(n);
    for (auto& v : p.z) {
        if (!(is >> v)) throw ValidationError("truncated path");
    }
    validate(p);
    return p;
}

void RunConfig::validate() const {
    if (!(alpha > 2.0 / 3.0 && alpha < 1.0)) throw ValidationError("alpha must lie in (2/3, 1)");
    if (n_grid.empty()) throw ValidationError("n_grid must not be empty");
    for (auto n : n_grid) {
        if (n < 1) throw ValidationError("n_grid entries must be positive");
    }
    if (mode != "tau_ge_beta_n" && mode != "size_ge_n") throw ValidationError("mode must be tau_ge_beta_n or size_ge_n");
    const std::pair<const char*, std::int64_t> positive[] = {
        {"samples", samples},         {"beta_samples", beta_samples}, {"chi_samples", chi_samples},
        {"sigma_trees", sigma_trees}, {"sigma_tree_size", sigma_tree_size}, {"walk_steps", walk_steps},
        {"walk_traces", walk_traces}, {"mesh_divisions", mesh_divisions}, {"crt_points", crt_points},
        {"window", window},           {"step_cap", step_cap},         {"rejection_cap", rejection_cap}};
    for (auto [key, v] : positive) {
        if (v <= 0) throw ValidationError(std::string(key) + " must be positive");
    }
    if (out_dir.empty()) throw ValidationError("out_dir must not be empty");
}

std::string RunConfig::to_text() const {
    std::ostringstream os;
    os << "alpha=" << num(alpha) << '\n';
    os << "n_grid=";
    for (std::size_t i = 0; i < n_grid.size(); ++i) os << (i ? "," : "") << n_grid[i];
    os << '\n';
    os << "mode=" << mode << '\n';
    os << "samples=" << samples << '\n';
    os << "beta_samples=" << beta_samples << '\n';
    os << "chi_samples=" << chi_samples << '\n';
    os << "sigma_trees=" << sigma_trees << '\n';
    os << "sigma_tree_size=" << sigma_tree_size << '\n';
    os << "walk_steps=" << walk_steps << '\n';
    os << "walk_traces=" << walk_traces << '\n';
    os << "seed=" << seed << '\n';
    os << "mesh_divisions=" << mesh_divisions << '\n';
    os << "crt_points=" << crt_points << '\n';
    os << "window=" << window << '\n';
    os << "out_dir=" << out_dir << '\n';
    os << "step_cap=" << step_cap << '\n';
    os << "rejection_cap=" << rejection_cap << '\n';
    return os.str();
}

void RunConfig::set(const std::string& key, const std::string& value) {
    if (key == "alpha") alpha = parse_number<double>(key, value);
    else if (key == "n_grid") {
        n_grid.clear();
        std::istringstream is(value);
        std::string item;
        while (std::getline(is, item, ',')) n_grid.push_back(parse_number<std::int64_t>(key, item));
    } else if (key == "mode") mode = value;
    else if (key == "samples") samples = parse_number<std::int64_t>(key, value);
    else if (key == "beta_samples") beta_samples = parse_number<std::int64_t>(key, value);
    else if (key == "chi_samples") chi_samples = parse_number<std::int64_t>(key, value);
    else if (key == "sigma_trees") sigma_trees = parse_number<std::int64_t>(key, value);
    else if (key == "sigma_tree_size") sigma_tree_size = parse_number<std::int64_t>(key, value);
    else if (key == "walk_steps") walk_steps = parse_number<std::int64_t>(key, value);
    else if (key == "walk_traces") walk_traces = parse_number<std::int64_t>(key, value);
    else if (key == "seed") seed = parse_number<std::uint64_t>(key, value);
    else if (key == "mesh_divisions") mesh_divisions = parse_number<std::int64_t>(key, value);
    else if (key == "crt_points") crt_points = parse_number<std::int64_t>(key, value);
    else if (key == "window") window = parse_number<std::int64_t>(key, value);
    else if (key == "out_dir") out_dir = value;
    else if (key == "step_cap") step_cap = parse_number<std::int64_t>(key, value);
    else if (key == "rejection_cap") rejection_cap = parse_number<std::int64_t>(key, value);
    else throw ValidationError("unknown config key " + key);
}

RunConfig RunConfig::parse(const std::string& text) {
    RunConfig c;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ValidationError("config line without '=': " + line);
        auto trim = [](std::string s) {
            const auto a = s.find_first_not_of(" \t\r");
            const auto b = s.find_last_not_of(" \t\r");
            return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
        };
        c.set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return c;
}

std::string fnv1a_hex(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string RunConfig::digest() const { return fnv1a_hex(to_text()); }

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot read " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(const std::string& path, const std::string& body) {
    const std::filesystem::path p(path);
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << body;
}

}  // namespace percolab
