#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "dataset.hpp"
#include "graph.hpp"
#include "rng.hpp"

namespace kac {

/// Group1: binary, ordinal, continuous. Group2 adds categorical.
enum class TypeGroup { Group1 = 1, Group2 = 2 };

std::vector<DataType> group_types(TypeGroup group);

struct GenConfig {
    int p = 10;
    double expected_degree = 2.0;
    TypeGroup group = TypeGroup::Group2;
    std::size_t n = 1000;
    std::uint64_t seed = 7;
    int ordinal_levels = 4;
    int categorical_levels = 3;
    std::pair<double, double> type_fraction_bounds{0.15, 0.60};

    void validate() const;
    int levels_of(DataType t) const;
};

/// Random DAG over a uniformly drawn topological order; each forward pair is
/// an edge with probability expected_degree / (p - 1). Labels X1..Xp.
MixedGraph random_dag(int p, double expected_degree, Rng& rng);

/// Type per node. Type fractions come from a Dirichlet(1) draw rejected until
/// every fraction lies within `bounds`, rounded to counts >= 1 summing to p,
/// then spread over nodes uniformly at random.
std::vector<DataType> assign_types(int p, TypeGroup group, std::pair<double, double> bounds, Rng& rng);

/// Conditional model of one node given its parents.
struct NodeParams {
    DataType type = DataType::Continuous;
    int levels = 0;  // 0 for continuous
    std::vector<int> discrete_parents;
    std::vector<int> parent_levels;  // level count of each discrete parent
    std::vector<int> continuous_parents;

    // Discrete node whose parents are all discrete: one probability row per
    // parent configuration.
    bool tabular = false;
    std::vector<std::vector<double>> table;

    // Linear-Gaussian form, used directly by continuous nodes and as the
    // latent utility of binary/ordinal nodes.
    std::vector<double> intercepts;  // per discrete-parent configuration
    std::vector<double> weights;     // per continuous parent
    double noise_sd = 1.0;
    std::vector<double> thresholds;  // binary/ordinal; filled by forward_sample

    // Categorical node with a continuous parent: argmax of linear utilities
    // plus standard Gumbel noise.
    std::vector<std::vector<double>> utility_intercepts;  // [config][level]
    std::vector<std::vector<double>> utility_weights;     // [level][continuous parent]

    std::size_t configurations() const;
    /// Mixed-radix index of the discrete parents' levels in row `r`.
    std::size_t configuration(const std::vector<std::vector<double>>& columns, std::size_t r) const;
};

struct SemParams {
    std::vector<NodeParams> nodes;
};

/// Weights and intercepts uniform on +-[0.5, 1.5]; noise sd uniform on
/// [0.5, 1.0]; probability tables Dirichlet(1) per parent configuration.
SemParams sample_sem_params(const MixedGraph& dag, const std::vector<DataType>& types, const GenConfig& cfg, Rng& rng);

/// Forward sampling in topological order. Binary and ordinal latents are cut
/// at equal-probability quantiles estimated from a 10 n pre-pass.
Dataset forward_sample(const MixedGraph& dag, const std::vector<DataType>& types, const SemParams& params,
                       std::size_t n, Rng& rng);

/// Same, but returns the calibrated parameters as well (thresholds filled in).
Dataset forward_sample(const MixedGraph& dag, const std::vector<DataType>& types, const SemParams& params,
                       std::size_t n, Rng& rng, SemParams* calibrated);

struct MaskResult {
    Dataset observed;
    std::vector<int> latents;  // sorted column indices removed
};

/// Removes k uniformly chosen columns, 1 <= k < p.
MaskResult mask_latents(const Dataset& data, const MixedGraph& dag, int k, Rng& rng);

/// Latent count used for a p-node graph: 1, 4, 8 for p = 10, 20, 30, else max(1, p / 5).
int default_latent_count(int p);

struct GridSpec {
    std::vector<int> node_counts{10};
    TypeGroup group = TypeGroup::Group2;
    int graphs_per_size = 1;
    int datasets_per_graph = 1;
    std::vector<std::size_t> sample_sizes{100};
    std::uint64_t seed = 7;
    double expected_degree = 2.0;
    int ordinal_levels = 4;
    int categorical_levels = 3;
    std::pair<double, double> type_fraction_bounds{0.15, 0.60};
    int latents = 0;  // 0: none, -1: default_latent_count(p), k > 0: fixed k

    void validate() const;
};

struct ManifestEntry {
    std::string path;  // relative to the manifest's directory
    std::string kind;  // dag | dataset | schema | latents
    int p = 0;
    std::size_t n = 0;
    int group = 0;
    std::uint64_t seed = 0;
};

/// Writes every DAG, dataset, schema and latent list below `outdir`, plus
/// `outdir/manifest.csv`. Deterministic in (spec, seed).
std::vector<ManifestEntry> generate_grid(const GridSpec& spec, const std::filesystem::path& outdir);

void write_manifest(const std::vector<ManifestEntry>& entries, const std::filesystem::path& path);
std::vector<ManifestEntry> read_manifest(const std::filesystem::path& path);

std::vector<std::string> read_label_list(const std::filesystem::path& path);

}  // namespace kac
