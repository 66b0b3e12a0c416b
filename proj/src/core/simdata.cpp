#include "simdata.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>

#include "errors.hpp"
#include "graph_io.hpp"
#include "text_util.hpp"

namespace kac {
namespace {

constexpr double kWeightLo = 0.5;
constexpr double kWeightHi = 1.5;
constexpr double kNoiseLo = 0.5;
constexpr double kNoiseHi = 1.0;
constexpr int kPrepassFactor = 10;
constexpr int kMaxRejections = 1'000'000;

double linear_part(const NodeParams& np, const std::vector<std::vector<double>>& columns, std::size_t r,
                   std::size_t config) {
    double v = np.intercepts[config];
    for (std::size_t k = 0; k < np.continuous_parents.size(); ++k) {
        v += np.weights[k] * columns[static_cast<std::size_t>(np.continuous_parents[k])][r];
    }
    return v;
}

int draw_from_row(const std::vector<double>& row, Rng& rng) {
    const double u = rng.uniform();
    double acc = 0.0;
    for (std::size_t l = 0; l < row.size(); ++l) {
        acc += row[l];
        if (u < acc) return static_cast<int>(l);
    }
    return static_cast<int>(row.size()) - 1;
}

std::vector<double> equal_quantile_thresholds(std::vector<double> latent, int levels) {
    std::sort(latent.begin(), latent.end());
    std::vector<double> cuts;
    const std::size_t m = latent.size();
    for (int k = 1; k < levels; ++k) {
        const std::size_t pos = std::min(m - 1, static_cast<std::size_t>(k) * m / static_cast<std::size_t>(levels));
        double t = latent[pos];
        if (!cuts.empty() && t <= cuts.back()) t = std::nextafter(cuts.back(), INFINITY);
        cuts.push_back(t);
    }
    return cuts;
}

int cut(double latent, const std::vector<double>& thresholds) {
    int level = 0;
    for (double t : thresholds) level += latent > t;
    return level;
}

// Samples `rows` draws of every node. With `calibrate`, thresholds of
// binary/ordinal latent nodes are (re)estimated from this very pass.
std::vector<std::vector<double>> simulate(const std::vector<int>& order, SemParams& params, std::size_t rows,
                                          Rng& rng, bool calibrate) {
    std::vector<std::vector<double>> columns(params.nodes.size());
    for (int v : order) {
        NodeParams& np = params.nodes[static_cast<std::size_t>(v)];
        auto& col = columns[static_cast<std::size_t>(v)];
        col.resize(rows);
        if (np.tabular) {
            for (std::size_t r = 0; r < rows; ++r) col[r] = draw_from_row(np.table[np.configuration(columns, r)], rng);
        } else if (np.type == DataType::Categorical) {
            for (std::size_t r = 0; r < rows; ++r) {
                const std::size_t config = np.configuration(columns, r);
                int best = 0;
                double best_u = -INFINITY;
                for (int l = 0; l < np.levels; ++l) {
                    double u = np.utility_intercepts[config][static_cast<std::size_t>(l)] + rng.gumbel();
                    const auto& w = np.utility_weights[static_cast<std::size_t>(l)];
                    for (std::size_t k = 0; k < np.continuous_parents.size(); ++k) {
                        u += w[k] * columns[static_cast<std::size_t>(np.continuous_parents[k])][r];
                    }
                    if (u > best_u) {
                        best_u = u;
                        best = l;
                    }
                }
                col[r] = best;
            }
        } else {
            for (std::size_t r = 0; r < rows; ++r) {
                col[r] = linear_part(np, columns, r, np.configuration(columns, r)) + np.noise_sd * rng.normal();
            }
            if (np.type != DataType::Continuous) {
                if (calibrate) np.thresholds = equal_quantile_thresholds(col, np.levels);
                for (auto& x : col) x = cut(x, np.thresholds);
            }
        }
    }
    return columns;
}

}  // namespace

std::vector<DataType> group_types(TypeGroup group) {
    if (group == TypeGroup::Group1) return {DataType::Binary, DataType::Ordinal, DataType::Continuous};
    return {DataType::Categorical, DataType::Binary, DataType::Ordinal, DataType::Continuous};
}

void GenConfig::validate() const {
    if (p < 2) throw ParamError("need at least two nodes");
    if (n < 1) throw ParamError("need at least one sample");
    if (ordinal_levels < 3) throw ParamError("ordinal variables need at least 3 levels");
    if (categorical_levels < 3) throw ParamError("categorical variables need at least 3 levels");
    const auto [lo, hi] = type_fraction_bounds;
    if (!(lo > 0.0 && lo < hi && hi < 1.0)) throw ParamError("type fraction bounds must satisfy 0 < lo < hi < 1");
}

int GenConfig::levels_of(DataType t) const {
    switch (t) {
        case DataType::Continuous: return 0;
        case DataType::Binary: return 2;
        case DataType::Ordinal: return ordinal_levels;
        case DataType::Categorical: return categorical_levels;
    }
    return 0;
}

std::size_t NodeParams::configurations() const {
    std::size_t total = 1;
    for (int l : parent_levels) total *= static_cast<std::size_t>(l);
    return total;
}

std::size_t NodeParams::configuration(const std::vector<std::vector<double>>& columns, std::size_t r) const {
    std::size_t index = 0;
    for (std::size_t k = 0; k < discrete_parents.size(); ++k) {
        index = index * static_cast<std::size_t>(parent_levels[k]) +
                static_cast<std::size_t>(columns[static_cast<std::size_t>(discrete_parents[k])][r]);
    }
    return index;
}

MixedGraph random_dag(int p, double expected_degree, Rng& rng) {
    if (p < 2) throw ParamError("random DAG needs at least two nodes");
    if (!(expected_degree >= 0.0 && expected_degree <= p - 1)) {
        throw ParamError("expected degree must lie in [0, p - 1]");
    }
    const double prob = expected_degree / (p - 1);
    std::vector<int> order(static_cast<std::size_t>(p));
    std::iota(order.begin(), order.end(), 0);
    rng.shuffle(order);
    MixedGraph dag = MixedGraph::with_default_labels(GraphKind::Dag, p);
    for (int a = 0; a < p; ++a) {
        for (int b = a + 1; b < p; ++b) {
            if (rng.bernoulli(prob)) dag.add_directed(order[static_cast<std::size_t>(a)], order[static_cast<std::size_t>(b)]);
        }
    }
    return dag;
}

std::vector<DataType> assign_types(int p, TypeGroup group, std::pair<double, double> bounds, Rng& rng) {
    const auto types = group_types(group);
    const auto k = static_cast<int>(types.size());
    if (p < k) throw InputError("need at least " + std::to_string(k) + " nodes to place every type");
    const auto [lo, hi] = bounds;
    if (!(lo > 0.0 && lo < hi && hi < 1.0) || lo * k > 1.0 || hi * k < 1.0) {
        throw ParamError("type fraction bounds are infeasible for this group");
    }
    std::vector<double> frac;
    for (int attempt = 0;; ++attempt) {
        if (attempt == kMaxRejections) throw ParamError("type fraction rejection sampling did not converge");
        frac = rng.flat_dirichlet(static_cast<std::size_t>(k));
        if (std::all_of(frac.begin(), frac.end(), [&](double f) { return f >= lo && f <= hi; })) break;
    }
    // Largest-remainder rounding, then lift empty types from the largest count.
    std::vector<int> counts(static_cast<std::size_t>(k));
    std::vector<std::pair<double, int>> remainders;
    int assigned = 0;
    for (int t = 0; t < k; ++t) {
        const double exact = frac[static_cast<std::size_t>(t)] * p;
        counts[static_cast<std::size_t>(t)] = static_cast<int>(std::floor(exact));
        assigned += counts[static_cast<std::size_t>(t)];
        remainders.emplace_back(exact - std::floor(exact), t);
    }
    std::stable_sort(remainders.begin(), remainders.end(), [](auto& x, auto& y) { return x.first > y.first; });
    for (int r = 0; assigned < p; ++r, ++assigned) ++counts[static_cast<std::size_t>(remainders[static_cast<std::size_t>(r)].second)];
    for (int t = 0; t < k; ++t) {
        while (counts[static_cast<std::size_t>(t)] == 0) {
            const auto big = std::max_element(counts.begin(), counts.end()) - counts.begin();
            --counts[static_cast<std::size_t>(big)];
            ++counts[static_cast<std::size_t>(t)];
        }
    }
    std::vector<DataType> out;
    for (int t = 0; t < k; ++t) out.insert(out.end(), static_cast<std::size_t>(counts[static_cast<std::size_t>(t)]), types[static_cast<std::size_t>(t)]);
    rng.shuffle(out);
    return out;
}

SemParams sample_sem_params(const MixedGraph& dag, const std::vector<DataType>& types, const GenConfig& cfg, Rng& rng) {
    if (types.size() != static_cast<std::size_t>(dag.size())) throw InputError("one type per node required");
    SemParams out;
    out.nodes.resize(types.size());
    for (int v = 0; v < dag.size(); ++v) {
        NodeParams& np = out.nodes[static_cast<std::size_t>(v)];
        np.type = types[static_cast<std::size_t>(v)];
        np.levels = cfg.levels_of(np.type);
        for (int u : dag.parents(v)) {
            const DataType pt = types[static_cast<std::size_t>(u)];
            if (is_discrete(pt)) {
                np.discrete_parents.push_back(u);
                np.parent_levels.push_back(cfg.levels_of(pt));
            } else {
                np.continuous_parents.push_back(u);
            }
        }
        const std::size_t configs = np.configurations();
        const bool has_discrete_parent = !np.discrete_parents.empty();
        np.tabular = is_discrete(np.type) && has_discrete_parent && np.continuous_parents.empty();
        if (np.tabular) {
            for (std::size_t c = 0; c < configs; ++c) np.table.push_back(rng.flat_dirichlet(static_cast<std::size_t>(np.levels)));
            continue;
        }
        if (np.type == DataType::Categorical) {
            np.utility_intercepts.assign(configs, std::vector<double>(static_cast<std::size_t>(np.levels), 0.0));
            if (has_discrete_parent) {
                for (auto& row : np.utility_intercepts) {
                    for (auto& x : row) x = rng.signed_uniform(kWeightLo, kWeightHi);
                }
            }
            np.utility_weights.assign(static_cast<std::size_t>(np.levels), {});
            for (auto& w : np.utility_weights) {
                for (std::size_t k = 0; k < np.continuous_parents.size(); ++k) w.push_back(rng.signed_uniform(kWeightLo, kWeightHi));
            }
            continue;
        }
        np.intercepts.assign(configs, 0.0);
        if (has_discrete_parent) {
            for (auto& x : np.intercepts) x = rng.signed_uniform(kWeightLo, kWeightHi);
        }
        for (std::size_t k = 0; k < np.continuous_parents.size(); ++k) np.weights.push_back(rng.signed_uniform(kWeightLo, kWeightHi));
        np.noise_sd = rng.uniform(kNoiseLo, kNoiseHi);
    }
    return out;
}

Dataset forward_sample(const MixedGraph& dag, const std::vector<DataType>& types, const SemParams& params,
                       std::size_t n, Rng& rng) {
    return forward_sample(dag, types, params, n, rng, nullptr);
}

Dataset forward_sample(const MixedGraph& dag, const std::vector<DataType>& types, const SemParams& params,
                       std::size_t n, Rng& rng, SemParams* calibrated) {
    if (n < 1) throw InputError("sample size must be positive");
    if (params.nodes.size() != static_cast<std::size_t>(dag.size()) || types.size() != params.nodes.size()) {
        throw InputError("parameters do not match the DAG");
    }
    const auto order = topological_order(dag);
    if (order.size() != params.nodes.size()) throw InputError("graph is not acyclic");
    SemParams working = params;
    Rng prepass(rng.next());
    simulate(order, working, n * kPrepassFactor, prepass, true);
    auto columns = simulate(order, working, n, rng, false);
    std::vector<Column> cols;
    for (int v = 0; v < dag.size(); ++v) {
        cols.push_back({dag.label(v), types[static_cast<std::size_t>(v)], std::move(columns[static_cast<std::size_t>(v)])});
    }
    if (calibrated) *calibrated = std::move(working);
    return Dataset(std::move(cols));
}

MaskResult mask_latents(const Dataset& data, const MixedGraph& dag, int k, Rng& rng) {
    const int p = static_cast<int>(data.cols());
    if (dag.size() != p) throw InputError("dataset and DAG disagree on the variable count");
    if (k < 1 || k >= p) throw InputError("latent count must satisfy 1 <= k < p");
    std::vector<int> idx(static_cast<std::size_t>(p));
    std::iota(idx.begin(), idx.end(), 0);
    for (int t = 0; t < k; ++t) {
        const auto pick = static_cast<std::size_t>(t) + rng.index(static_cast<std::size_t>(p - t));
        std::swap(idx[static_cast<std::size_t>(t)], idx[pick]);
    }
    MaskResult out;
    out.latents.assign(idx.begin(), idx.begin() + k);
    std::sort(out.latents.begin(), out.latents.end());
    std::vector<std::size_t> keep;
    for (int v = 0; v < p; ++v) {
        if (!std::binary_search(out.latents.begin(), out.latents.end(), v)) keep.push_back(static_cast<std::size_t>(v));
    }
    out.observed = data.select(keep);
    return out;
}

int default_latent_count(int p) {
    switch (p) {
        case 10: return 1;
        case 20: return 4;
        case 30: return 8;
        default: return std::max(1, p / 5);
    }
}

void GridSpec::validate() const {
    if (node_counts.empty() || sample_sizes.empty()) throw ParamError("grid needs node counts and sample sizes");
    if (graphs_per_size < 1 || datasets_per_graph < 1) throw ParamError("grid needs at least one graph and dataset");
    for (int p : node_counts) {
        GenConfig cfg;
        cfg.p = p;
        cfg.group = group;
        cfg.ordinal_levels = ordinal_levels;
        cfg.categorical_levels = categorical_levels;
        cfg.type_fraction_bounds = type_fraction_bounds;
        cfg.validate();
        if (expected_degree < 0.0 || expected_degree > p - 1) throw ParamError("expected degree must lie in [0, p - 1]");
        if (static_cast<std::size_t>(p) < group_types(group).size()) throw ParamError("too few nodes for the type group");
        const int k = latents < 0 ? default_latent_count(p) : latents;
        if (k >= p) throw ParamError("latent count must be below the node count");
    }
    for (auto n : sample_sizes) {
        if (n < 1) throw ParamError("sample sizes must be positive");
    }
}

std::vector<ManifestEntry> generate_grid(const GridSpec& spec, const std::filesystem::path& outdir) {
    spec.validate();
    std::error_code ec;
    std::filesystem::create_directories(outdir, ec);
    if (ec) throw IoError("cannot create " + outdir.string() + ": " + ec.message());

    const int group = static_cast<int>(spec.group);
    std::vector<ManifestEntry> manifest;
    for (int p : spec.node_counts) {
        for (int g = 0; g < spec.graphs_per_size; ++g) {
            const std::uint64_t graph_seed = derive_seed(derive_seed(spec.seed, static_cast<std::uint64_t>(p)), static_cast<std::uint64_t>(g));
            Rng graph_rng(graph_seed);
            const MixedGraph dag = random_dag(p, spec.expected_degree, graph_rng);
            const auto types = assign_types(p, spec.group, spec.type_fraction_bounds, graph_rng);

            const std::string dir = "p" + std::to_string(p) + "_g" + std::to_string(g);
            std::filesystem::create_directories(outdir / dir, ec);
            if (ec) throw IoError("cannot create " + (outdir / dir).string() + ": " + ec.message());
            write_graph_file(dag, outdir / dir / "dag.txt");
            manifest.push_back({dir + "/dag.txt", "dag", p, 0, group, graph_seed});

            GenConfig cfg;
            cfg.p = p;
            cfg.expected_degree = spec.expected_degree;
            cfg.group = spec.group;
            cfg.ordinal_levels = spec.ordinal_levels;
            cfg.categorical_levels = spec.categorical_levels;
            cfg.type_fraction_bounds = spec.type_fraction_bounds;
            for (int d = 0; d < spec.datasets_per_graph; ++d) {
                const std::uint64_t family_seed = derive_seed(graph_seed, 1000 + static_cast<std::uint64_t>(d));
                Rng family_rng(family_seed);
                const SemParams params = sample_sem_params(dag, types, cfg, family_rng);
                const int k = spec.latents < 0 ? default_latent_count(p) : spec.latents;
                for (auto n : spec.sample_sizes) {
                    const std::uint64_t sample_seed = derive_seed(family_seed, n);
                    Rng sample_rng(sample_seed);
                    Dataset data = forward_sample(dag, types, params, n, sample_rng);
                    const std::string stem = dir + "/d" + std::to_string(d) + "_n" + std::to_string(n);
                    std::vector<std::string> latent_labels;
                    if (k > 0) {
                        // Same latent set for every sample size of a family.
                        Rng mask_rng(derive_seed(family_seed, 0xA5A5));
                        auto masked = mask_latents(data, dag, k, mask_rng);
                        for (int v : masked.latents) latent_labels.push_back(dag.label(v));
                        data = std::move(masked.observed);
                    }
                    write_dataset(data, outdir / (stem + ".csv"), outdir / (stem + ".schema"));
                    manifest.push_back({stem + ".csv", "dataset", p, n, group, sample_seed});
                    manifest.push_back({stem + ".schema", "schema", p, n, group, sample_seed});
                    if (k > 0) {
                        const auto path = outdir / (stem + ".latents");
                        std::ofstream out(path, std::ios::binary);
                        if (!out) throw IoError("cannot open " + path.string() + " for writing");
                        for (const auto& l : latent_labels) out << l << '\n';
                        manifest.push_back({stem + ".latents", "latents", p, n, group, sample_seed});
                    }
                }
            }
        }
    }
    write_manifest(manifest, outdir / "manifest.csv");
    return manifest;
}

void write_manifest(const std::vector<ManifestEntry>& entries, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    out << "path,kind,p,n,group,seed\n";
    for (const auto& e : entries) {
        out << e.path << ',' << e.kind << ',' << e.p << ',' << e.n << ',' << e.group << ',' << e.seed << '\n';
    }
    if (!out) throw IoError("write failed: " + path.string());
}

std::vector<ManifestEntry> read_manifest(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open manifest " + path.string());
    std::string line;
    if (!std::getline(in, line) || trim(line) != "path,kind,p,n,group,seed") {
        throw FormatError(path.string() + ": unexpected manifest header");
    }
    std::vector<ManifestEntry> out;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        const auto f = split(trim(line), ',');
        std::int64_t p = 0, n = 0, group = 0;
        if (f.size() != 6 || !parse_int(f[2], p) || !parse_int(f[3], n) || !parse_int(f[4], group)) {
            throw FormatError(path.string() + ":" + std::to_string(line_no) + ": malformed manifest row");
        }
        ManifestEntry e;
        e.path = f[0];
        e.kind = f[1];
        e.p = static_cast<int>(p);
        e.n = static_cast<std::size_t>(n);
        e.group = static_cast<int>(group);
        try {
            e.seed = std::stoull(f[5]);
        } catch (const std::exception&) {
            throw FormatError(path.string() + ":" + std::to_string(line_no) + ": bad seed");
        }
        out.push_back(std::move(e));
    }
    return out;
}

std::vector<std::string> read_label_list(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    std::vector<std::string> out;
    std::string line;
    while (std::getline(in, line)) {
        line = trim(line);
        if (!line.empty()) out.push_back(line);
    }
    return out;
}

}  // namespace kac
