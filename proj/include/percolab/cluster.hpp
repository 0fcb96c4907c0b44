#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "percolab/boltzmann.hpp"
#include "percolab/coding.hpp"
#include "percolab/excursions.hpp"
#include "percolab/graph.hpp"
#include "percolab/model.hpp"

namespace percolab {

/// A decoration graph with boundary vertices boundary[0..i-1] in cyclic order.
struct Decoration {
    Graph graph;
    std::vector<std::int32_t> boundary;
    std::int64_t edge_multiplicity_total = 0;  // edges counted with multiplicity
};

class DecorationFamily {
public:
    virtual ~DecorationFamily() = default;
    virtual Decoration sample(std::int32_t boundary_length, Rng& rng) const = 0;
    virtual std::string name() const = 0;
};

/// G_i is the i-cycle (a single edge for i = 2).
class UnitCycleFamily : public DecorationFamily {
public:
    Decoration sample(std::int32_t boundary_length, Rng& rng) const override;
    std::string name() const override { return "unit_cycle"; }
};

/// G_i is the black boundary component of a critically percolated Boltzmann triangulation of the
/// i-gon with all-black boundary.
class PercolatedBoltzmannFamily : public DecorationFamily {
public:
    explicit PercolatedBoltzmannFamily(const ModelParams& params);
    PercolatedBoltzmannFamily(const ModelParams& params, std::shared_ptr<const PartitionFunction> z);
    Decoration sample(std::int32_t boundary_length, Rng& rng) const override;
    std::string name() const override { return "percolated_boltzmann"; }
    const PartitionFunction& partition() const { return *z_; }

private:
    ModelParams params_;
    std::shared_ptr<const PartitionFunction> z_;
};

struct DecoratedGraph {
    Graph graph;
    std::int32_t root = 0;
    std::vector<double> counting;                  // counting measure, zero at the root
    std::vector<std::int32_t> vertex_of_black;     // graph vertex of each black tree vertex (-1 for white)
    std::vector<std::vector<std::int32_t>> block;  // graph vertices of G^(u) for each tree vertex u
};

DecoratedGraph decorate_tree(const TwoTypeTree& tree, const DecorationFamily& family, Rng& rng);

enum class Provenance : std::uint8_t { root_loop = 0, tree_loop = 1, internal = 2 };

struct Cluster {
    Graph graph;
    std::int32_t root = 0;
    std::vector<Provenance> provenance;
    std::vector<std::int32_t> face;            // loop index of the decoration for internal vertices, else -1
    LatticePath source;
    std::vector<std::int32_t> vertex_of_time;  // cluster vertex of each time 0..tau (tau maps to root)
    std::int64_t l = 0;
    std::int64_t k = 0;
    std::int64_t loop_vertex_count = 0;        // black loop vertices (non-ramp)
    std::int64_t source_tree_black = 0;        // |t_black| of the tree coded by the path
    // accounting
    std::vector<std::int64_t> xi;              // per step 1..tau (index 0 unused)
    std::int64_t root_face_all_black_internal = 0;
    std::int64_t root_face_internal = 0;
    std::int64_t prepruning_black = 0;         // black vertices before pruning

    std::int32_t size() const { return graph.num_vertices(); }
    std::int64_t root_loop_size() const { return l + k + 1; }
};

Cluster build_cluster(const LatticePath& path, const ModelParams& params, const PartitionFunction& z, Rng& rng);

struct VolumeDecomposition {
    std::vector<std::int64_t> xi;
    std::int64_t sum_xi = 0;
    std::int64_t delta = 0;
    std::int64_t cluster_size = 0;  // sum_xi - delta
};

/// delta is counted directly from the root face (ramp vertices plus internal vertices that the
/// mixed boundary cuts off), independently of the cluster's breadth-first count.
VolumeDecomposition volume_decomposition(const Cluster& cluster);

struct RootStructure {
    std::int64_t l = 0;
    std::int64_t k = 0;
    std::int64_t loop_size = 0;
    std::vector<std::int64_t> gamma;  // Gamma_1..Gamma_l
    std::int64_t i_max = 0;           // 1-based index of the largest Gamma, smallest on ties
    std::int64_t gamma_max() const { return gamma.empty() ? 0 : gamma[i_max - 1]; }
};

RootStructure decompose_root_structure(const LatticePath& path);

enum class ConditioningMode { tau_ge_beta_n, size_ge_n };

struct ConditionedCluster {
    Cluster cluster;
    std::int64_t rejections = 0;
    bool tau_event = false;   // tau >= beta n
    bool size_event = false;  // |C| >= n
};

struct ConditioningOptions {
    double beta = 0.0;              // required for tau mode
    std::int64_t max_length = 0;    // optional upper window on tau
    Caps caps{};
};

ConditionedCluster sample_cluster_conditioned(std::int64_t n, ConditioningMode mode, const ModelParams& params,
                                              const PartitionFunction& z, Rng& rng,
                                              const ConditioningOptions& opts);

/// Cluster size from a walk streamed step by step, without assembling the graph. When `censor`
/// is positive the computation stops as soon as the size is known to be at least `censor`
/// (returning `censor`). Also reports tau (or the step at which it stopped).
struct StreamedVolume {
    std::int64_t size = 0;
    std::int64_t tau = 0;
    bool censored = false;
    bool reached_tau_threshold = false;
};

StreamedVolume streamed_cluster_volume(const StepLaw& law, const ModelParams& params, const PartitionFunction& z,
                                       Rng& rng, std::int64_t censor, std::int64_t tau_threshold = 0,
                                       std::int64_t step_cap = Caps{}.steps);

/// Component sizes of one decoration of boundary length L (counting measure V - 1 and degree mass).
struct DecorationMass {
    std::int64_t counting = 0;
    std::int64_t degree = 0;
};

DecorationMass decoration_mass(const Decoration& d);

std::string cluster_to_json(const Cluster& c);
std::string path_digest(const LatticePath& path);

}  // namespace percolab
