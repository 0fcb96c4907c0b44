#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "percolab/coding.hpp"
#include "percolab/geometry.hpp"

namespace percolab {

/// Text form: "space n root", a "mass" line, then n distance rows.
std::string serialize_space(const FiniteMetricMeasureSpace& s);
FiniteMetricMeasureSpace parse_space(const std::string& text);

/// Text form: "tree n" then one line of parent indices in vertex order (-1 for the root).
std::string serialize_tree(const TwoTypeTree& t);
TwoTypeTree parse_tree(const std::string& text);

std::string serialize_path(const LatticePath& p);
LatticePath parse_path(const std::string& text);

struct RunConfig {
    double alpha = 0.8;
    std::vector<std::int64_t> n_grid{1000, 4000, 16000};
    std::string mode = "tau_ge_beta_n";
    std::int64_t samples = 200;
    std::int64_t beta_samples = 20000;
    std::int64_t chi_samples = 20000;
    std::int64_t sigma_trees = 2000;
    std::int64_t sigma_tree_size = 2000;
    std::int64_t walk_steps = 100000;
    std::int64_t walk_traces = 30;
    std::uint64_t seed = 1;
    std::int64_t mesh_divisions = 16384;
    std::int64_t crt_points = 1000;
    std::int64_t window = 16;  // tau window as a multiple of beta n
    std::string out_dir = "out";
    std::int64_t step_cap = 1'000'000'000;
    std::int64_t rejection_cap = 10'000'000;

    /// Throws ValidationError naming the offending key.
    void validate() const;
    /// Flat key=value lines in a fixed key order.
    std::string to_text() const;
    static RunConfig parse(const std::string& text);
    /// Applies one key=value assignment.
    void set(const std::string& key, const std::string& value);
    std::string digest() const;
};

std::string fnv1a_hex(const std::string& bytes);
std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& body);

}  // namespace percolab
