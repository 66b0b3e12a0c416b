// Command-line front end. Talks to the library only through the C interface.

#include <CLI11.hpp>

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <system_error>
#include <thread>
#include <vector>

#include "kacausal/kacausal.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitData = 3;
constexpr int kExitInternal = 4;

struct CliFailure {
    int code;
    std::string message;
};

int exit_code_for(kac_status s) {
    switch (s) {
        case KAC_OK: return kExitOk;
        case KAC_ERR_USAGE: return kExitUsage;
        case KAC_ERR_DATA:
        case KAC_ERR_IO: return kExitData;
        default: return kExitInternal;
    }
}

void check(kac_status s, const std::string& context) {
    if (s != KAC_OK) throw CliFailure{exit_code_for(s), context + ": " + kac_last_error()};
}

std::string fmt(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

template <typename T, void (*Free)(T*)>
struct Handle {
    T* ptr = nullptr;
    Handle() = default;
    Handle(const Handle&) = delete;
    Handle& operator=(const Handle&) = delete;
    ~Handle() { Free(ptr); }
    T** out() { return &ptr; }
    T* get() const { return ptr; }
};

using DatasetHandle = Handle<kac_dataset, kac_dataset_free>;
using GraphHandle = Handle<kac_graph, kac_graph_free>;
using CorrHandle = Handle<kac_corr, kac_corr_free>;

struct KernelArgs {
    std::string preset = "P1";
    std::optional<double> sigma;
    std::optional<double> theta;
    bool no_centering = false;
    bool zscore = false;

    std::pair<double, double> resolve() const {
        double s = 0.0, t = 0.0;
        check(kac_preset(preset.c_str(), &s, &t), "preset");
        return {sigma.value_or(s), theta.value_or(t)};
    }
};

struct Options {
    std::string config;

    // simulate
    std::vector<int> nodes{10};
    int graphs = 1;
    int datasets = 1;
    std::vector<std::size_t> samples{100};
    int group = 2;
    std::uint64_t seed = 7;
    double degree = 2.0;
    int latents = 0;
    int ordinal_levels = 4;
    int categorical_levels = 3;
    std::string sim_out;

    // learn / corr
    std::string data;
    std::string schema;
    std::string algorithm = "pc";
    KernelArgs kernel;
    double alpha = 0.1;
    std::string output = "-";
    std::string dump_corr;
    bool classic_skeleton = false;
    bool verbose = false;
    int max_cond_size = -1;

    // score
    std::string truth;
    std::string learned;
    bool from_dag = false;
    std::string latents_file;
    bool header = false;

    // bench
    int experiment = 0;
    bool desk_scale = false;
    bool full = false;
    std::string manifest;
    bool fresh = false;
    std::string bench_out = "bench_out";
    std::vector<std::string> presets{"P1", "P2", "P3", "P4", "P5", "P6", "P7", "P8", "P9"};
    int jobs = 0;
    bool plot_data = false;
};

void add_kernel_flags(CLI::App* cmd, KernelArgs& k) {
    cmd->add_option("--preset", k.preset, "Kernel parameter preset P1..P9 (default P1)");
    cmd->add_option("--sigma", k.sigma, "RBF bandwidth for continuous columns; overrides the preset");
    cmd->add_option("--theta", k.theta, "Categorical kernel exponent; overrides the preset");
    cmd->add_flag("--no-centering", k.no_centering, "Align raw instead of centered kernel matrices");
    cmd->add_flag("--zscore", k.zscore, "Standardize continuous columns before building kernels");
}

std::unique_ptr<CLI::App> build_app(Options& o) {
    auto app = std::make_unique<CLI::App>("Causal structure learning on mixed-type data with kernel alignment", "kacausal");
    app->require_subcommand(1);
    app->add_option("--config", o.config,
                    "File of 'key = value' lines supplying any flag of the chosen command; the command line wins")
        ->check(CLI::ExistingFile);

    auto* sim = app->add_subcommand("simulate", "Generate random DAGs, mixed datasets and a manifest");
    sim->add_option("--nodes", o.nodes, "Node counts, one grid row each (default 10)")->delimiter(',');
    sim->add_option("--graphs", o.graphs, "DAGs per node count (default 1)");
    sim->add_option("--datasets", o.datasets, "Datasets per DAG (default 1)");
    sim->add_option("--samples", o.samples, "Sample sizes (default 100)")->delimiter(',');
    sim->add_option("--group", o.group, "Type group: 1 binary, ordinal and continuous; 2 adds categorical (default 2)")
        ->check(CLI::IsMember({1, 2}));
    sim->add_option("--seed", o.seed, "Master seed (default 7)");
    sim->add_option("--degree", o.degree, "Expected node degree (default 2)");
    sim->add_option("--latents", o.latents, "Variables removed per dataset: 0 none, -1 by size (1/4/8), k fixed");
    sim->add_option("--ordinal-levels", o.ordinal_levels, "Levels of ordinal variables (default 4)");
    sim->add_option("--categorical-levels", o.categorical_levels, "Levels of categorical variables (default 3)");
    sim->add_option("--out", o.sim_out, "Output directory, created if missing")->required();

    auto* learn = app->add_subcommand("learn", "Learn a CPDAG (pc) or PAG (fci) from a dataset");
    learn->add_option("data", o.data, "Dataset CSV")->required();
    learn->add_option("--schema", o.schema, "Schema file (default: CSV path with .schema extension)");
    learn->add_option("--algorithm", o.algorithm, "pc or fci (default pc)")->check(CLI::IsMember({"pc", "fci"}));
    add_kernel_flags(learn, o.kernel);
    learn->add_option("--alpha", o.alpha, "Significance level of the Fisher-z test (default 0.1)");
    learn->add_option("-o,--output", o.output, "Graph file to write, '-' for standard output (default)");
    learn->add_option("--dump-corr", o.dump_corr, "Also write the pseudo-correlation matrix as CSV");
    learn->add_flag("--classic-skeleton", o.classic_skeleton, "Order-dependent skeleton search instead of the stable one");
    learn->add_option("--max-cond-size", o.max_cond_size, "Largest conditioning set (default unlimited)");
    learn->add_flag("--verbose", o.verbose, "Log every conditional independence decision to stderr");

    auto* corr = app->add_subcommand("corr", "Write the pseudo-correlation matrix of a dataset");
    corr->add_option("data", o.data, "Dataset CSV")->required();
    corr->add_option("--schema", o.schema, "Schema file (default: CSV path with .schema extension)");
    add_kernel_flags(corr, o.kernel);
    corr->add_option("-o,--output", o.output, "CSV file to write")->required();

    auto* score = app->add_subcommand("score", "Compare a learned graph against the truth");
    score->add_option("truth", o.truth, "True graph file")->required();
    score->add_option("learned", o.learned, "Learned graph file")->required();
    score->add_flag("--from-dag", o.from_dag,
                    "Truth is a generating DAG: compare against its CPDAG, or its PAG when --latents is given");
    score->add_option("--latents", o.latents_file, "File listing latent labels, one per line (with --from-dag)");
    score->add_flag("--header", o.header, "Print a header line before the report row");

    auto* bench = app->add_subcommand("bench", "Run an experiment grid and write scores.csv and summary.csv");
    bench->add_option("--experiment", o.experiment, "1: group 1 with pc, 2: group 2 with pc, 3: group 2 with fci")
        ->required()
        ->check(CLI::Range(1, 3));
    bench->add_flag("--desk-scale", o.desk_scale, "Small grid: p 10, 3 graphs x 2 datasets, n up to 2000 (default)");
    bench->add_flag("--full", o.full, "Full grid: p 10/20/30, 10 graphs x 5 datasets, n up to 5000")
        ->excludes("--desk-scale");
    bench->add_option("--seed", o.seed, "Master seed for fresh data (default 7)");
    bench->add_option("--manifest", o.manifest, "Existing manifest.csv to score");
    bench->add_flag("--fresh", o.fresh, "Simulate the grid first, even if the manifest exists");
    bench->add_option("--out", o.bench_out, "Output directory (default bench_out)");
    bench->add_option("--presets", o.presets, "Presets to run (default P1..P9)")->delimiter(',');
    bench->add_option("--alpha", o.alpha, "Significance level (default 0.1)");
    bench->add_flag("--no-centering", o.kernel.no_centering, "Align raw instead of centered kernel matrices");
    bench->add_flag("--classic-skeleton", o.classic_skeleton, "Order-dependent skeleton search");
    bench->add_option("--max-cond-size", o.max_cond_size, "Largest conditioning set (default unlimited)");
    bench->add_option("--jobs", o.jobs, "Worker threads (default: hardware concurrency)");
    bench->add_flag("--plot-data", o.plot_data, "Also write plot_<preset>_p<p>.dat files");
    return app;
}

std::vector<std::pair<std::string, std::string>> read_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CliFailure{kExitData, "cannot open config file " + path};
    std::vector<std::pair<std::string, std::string>> entries;
    std::string line;
    int lineno = 0;
    const auto trim = [](std::string s) {
        const auto b = s.find_first_not_of(" \t\r");
        if (b == std::string::npos) return std::string{};
        const auto e = s.find_last_not_of(" \t\r");
        return s.substr(b, e - b + 1);
    };
    while (std::getline(in, line)) {
        ++lineno;
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw CliFailure{kExitUsage, path + ":" + std::to_string(lineno) + ": expected 'key = value'"};
        auto key = trim(line.substr(0, eq));
        auto value = trim(line.substr(eq + 1));
        if (value.size() >= 2 && value.front() == '"' && value.back() == '"') value = value.substr(1, value.size() - 2);
        entries.emplace_back(std::move(key), std::move(value));
    }
    return entries;
}

// Turns config entries the command line left unset into extra arguments for the subcommand.
std::vector<std::string> config_arguments(const CLI::App& sub, const std::vector<std::pair<std::string, std::string>>& entries) {
    std::vector<std::string> args;
    for (const auto& [key, value] : entries) {
        const CLI::Option* opt = sub.get_option_no_throw("--" + key);
        if (opt == nullptr) throw CliFailure{kExitUsage, "unknown configuration key '" + key + "' for " + sub.get_name()};
        if (opt->count() > 0) continue;
        // The joined form serves flags (--flag=false) and valued options alike.
        args.push_back("--" + key + "=" + value);
    }
    return args;
}

void ensure_dir(const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw CliFailure{kExitData, "cannot create directory " + dir.string() + ": " + ec.message()};
}

kac_dataset* load_dataset(const Options& o, DatasetHandle& data) {
    check(kac_dataset_read(o.data.c_str(), o.schema.empty() ? nullptr : o.schema.c_str(), data.out()), "reading " + o.data);
    if (o.kernel.zscore) check(kac_dataset_zscore(data.get()), "standardizing");
    return data.get();
}

int cmd_simulate(const Options& o) {
    kac_grid_options g{};
    check(kac_grid_options_for_experiment(2, 0, o.seed, &g), "simulate");
    g.node_counts = o.nodes.data();
    g.node_counts_len = o.nodes.size();
    g.sample_sizes = o.samples.data();
    g.sample_sizes_len = o.samples.size();
    g.group = o.group;
    g.graphs_per_size = o.graphs;
    g.datasets_per_graph = o.datasets;
    g.expected_degree = o.degree;
    g.latents = o.latents;
    g.ordinal_levels = o.ordinal_levels;
    g.categorical_levels = o.categorical_levels;
    ensure_dir(o.sim_out);
    std::size_t written = 0;
    check(kac_simulate(&g, o.sim_out.c_str(), &written), "simulate");
    std::cout << "wrote " << written << " datasets and manifest.csv to " << o.sim_out << '\n';
    return kExitOk;
}

int cmd_learn(const Options& o) {
    DatasetHandle data;
    load_dataset(o, data);
    if (kac_dataset_cols(data.get()) < 2) throw CliFailure{kExitUsage, "learning needs at least two variables"};
    kac_learn_options opts;
    kac_learn_options_init(&opts);
    opts.algorithm = o.algorithm == "fci" ? KAC_ALGO_FCI : KAC_ALGO_PC;
    std::tie(opts.sigma, opts.theta) = o.kernel.resolve();
    opts.alpha = o.alpha;
    opts.centering = o.kernel.no_centering ? 0 : 1;
    opts.stable_skeleton = o.classic_skeleton ? 0 : 1;
    opts.max_cond_size = o.max_cond_size;
    opts.verbose = o.verbose ? 1 : 0;
    if (o.verbose) kac_set_log_level(KAC_LOG_DEBUG);

    GraphHandle graph;
    CorrHandle corr;
    check(kac_learn(data.get(), &opts, graph.out(), o.dump_corr.empty() ? nullptr : corr.out()), "learn");
    if (!o.dump_corr.empty()) check(kac_corr_write_csv(corr.get(), o.dump_corr.c_str()), "writing " + o.dump_corr);
    check(kac_graph_write(graph.get(), o.output.c_str()), "writing graph");
    return kExitOk;
}

int cmd_corr(const Options& o) {
    DatasetHandle data;
    load_dataset(o, data);
    if (kac_dataset_cols(data.get()) < 2) throw CliFailure{kExitUsage, "pseudo-correlation needs at least two variables"};
    const auto [sigma, theta] = o.kernel.resolve();
    CorrHandle corr;
    check(kac_corr_compute(data.get(), sigma, theta, o.kernel.no_centering ? 0 : 1, corr.out()), "alignment");
    check(kac_corr_write_csv(corr.get(), o.output.c_str()), "writing " + o.output);
    return kExitOk;
}

std::vector<std::string> read_lines(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CliFailure{kExitData, "cannot open " + path};
    std::vector<std::string> out;
    std::string line;
    while (std::getline(in, line)) {
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
        if (!line.empty()) out.push_back(line);
    }
    return out;
}

int cmd_score(const Options& o) {
    if (!o.latents_file.empty() && !o.from_dag) throw CliFailure{kExitUsage, "--latents requires --from-dag"};
    GraphHandle truth_file, learned, derived;
    check(kac_graph_read(o.truth.c_str(), truth_file.out()), "reading " + o.truth);
    check(kac_graph_read(o.learned.c_str(), learned.out()), "reading " + o.learned);
    const kac_graph* truth = truth_file.get();
    if (o.from_dag) {
        if (o.latents_file.empty()) {
            check(kac_graph_dag_to_cpdag(truth, derived.out()), "converting truth");
        } else {
            const auto labels = read_lines(o.latents_file);
            std::vector<const char*> ptrs;
            for (const auto& l : labels) ptrs.push_back(l.c_str());
            check(kac_graph_true_pag(truth, ptrs.data(), ptrs.size(), derived.out()), "converting truth");
        }
        truth = derived.get();
    }
    kac_shd_report r{};
    check(kac_score(truth, learned.get(), &r), "score");
    if (o.header) std::cout << "extra,missing,wrong_mark,shd,normalized\n";
    std::cout << r.extra << ',' << r.missing << ',' << r.wrong_mark << ',' << r.shd << ',' << fmt(r.normalized) << '\n';
    return kExitOk;
}

int cmd_bench(const Options& o) {
    const std::filesystem::path out_dir(o.bench_out);
    std::filesystem::path manifest = o.manifest;
    if (manifest.empty() || o.fresh) {
        const auto data_dir = manifest.empty() ? out_dir / "data" : manifest.parent_path();
        if (manifest.empty()) manifest = data_dir / "manifest.csv";
        kac_grid_options g{};
        check(kac_grid_options_for_experiment(o.experiment, o.full ? 1 : 0, o.seed, &g), "bench");
        ensure_dir(data_dir);
        std::size_t written = 0;
        check(kac_simulate(&g, data_dir.string().c_str(), &written), "simulate");
    } else if (!std::filesystem::exists(manifest)) {
        throw CliFailure{kExitData, "manifest " + manifest.string() + " does not exist (use --fresh to simulate)"};
    }

    std::vector<const char*> presets;
    for (const auto& p : o.presets) presets.push_back(p.c_str());
    kac_bench_options b{};
    b.experiment = o.experiment;
    b.presets = presets.data();
    b.presets_len = presets.size();
    b.alpha = o.alpha;
    b.centering = o.kernel.no_centering ? 0 : 1;
    b.stable_skeleton = o.classic_skeleton ? 0 : 1;
    b.max_cond_size = o.max_cond_size;
    b.jobs = o.jobs > 0 ? o.jobs : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    b.plot_data = o.plot_data ? 1 : 0;
    kac_bench_result result{};
    check(kac_bench_run(&b, manifest.string().c_str(), out_dir.string().c_str(), &result), "bench");
    std::cout << "scored " << result.rows << " cells (" << result.failed << " failed); results in " << out_dir.string()
              << '\n';
    return result.failed == 0 ? kExitOk : kExitInternal;
}

int dispatch(const CLI::App& app, const Options& o) {
    const auto* sub = app.get_subcommands().front();
    const auto& name = sub->get_name();
    if (name == "simulate") return cmd_simulate(o);
    if (name == "learn") return cmd_learn(o);
    if (name == "corr") return cmd_corr(o);
    if (name == "score") return cmd_score(o);
    return cmd_bench(o);
}

int run(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    auto parse = [](CLI::App& app, std::vector<std::string> a) {
        std::reverse(a.begin(), a.end());
        app.parse(a);
    };

    auto options = std::make_unique<Options>();
    auto app = build_app(*options);
    try {
        parse(*app, args);
        if (!options->config.empty()) {
            const auto* sub = app->get_subcommands().front();
            const auto extra = config_arguments(*sub, read_config(options->config));
            if (!extra.empty()) {
                // Re-parse with config values placed right after the subcommand name.
                auto pos = std::find(args.begin(), args.end(), sub->get_name());
                args.insert(pos + 1, extra.begin(), extra.end());
                options = std::make_unique<Options>();
                app = build_app(*options);
                parse(*app, args);
            }
        }
    } catch (const CLI::ParseError& e) {
        const int rc = app->exit(e);
        return rc == 0 ? kExitOk : kExitUsage;
    }
    return dispatch(*app, *options);
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const CliFailure& f) {
        std::cerr << "error: " << f.message << '\n';
        return f.code;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInternal;
    }
}
