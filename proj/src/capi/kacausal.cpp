#include "kacausal/kacausal.h"

#include <cstring>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include "alignment.hpp"
#include "bench.hpp"
#include "discovery.hpp"
#include "errors.hpp"
#include "graph_io.hpp"
#include "log.hpp"
#include "metrics.hpp"
#include "simdata.hpp"

struct kac_dataset {
    kac::Dataset value;
};

struct kac_graph {
    kac::MixedGraph value;
};

struct kac_corr {
    kac::PseudoCorrelationMatrix value;
};

namespace {

thread_local std::string g_last_error;

kac_status fail(kac_status status, const std::string& message) {
    g_last_error = message;
    return status;
}

// Runs `body`, translating the library's exception taxonomy into status codes.
template <typename Body>
kac_status guarded(Body&& body) {
    try {
        body();
        return KAC_OK;
    } catch (const kac::ParamError& e) {
        return fail(KAC_ERR_USAGE, e.what());
    } catch (const kac::InputError& e) {
        return fail(KAC_ERR_DATA, e.what());
    } catch (const kac::FormatError& e) {
        return fail(KAC_ERR_DATA, e.what());
    } catch (const kac::IoError& e) {
        return fail(KAC_ERR_IO, e.what());
    } catch (const kac::NumericError& e) {
        return fail(KAC_ERR_NUMERIC, e.what());
    } catch (const std::exception& e) {
        return fail(KAC_ERR_NUMERIC, std::string("internal error: ") + e.what());
    } catch (...) {
        return fail(KAC_ERR_NUMERIC, "internal error");
    }
}

#define KAC_REQUIRE(cond, what)                                    \
    do {                                                           \
        if (!(cond)) return fail(KAC_ERR_USAGE, (what));           \
    } while (0)

}  // namespace

extern "C" {

const char* kac_version(void) { return "1.0.0"; }

const char* kac_last_error(void) { return g_last_error.c_str(); }

void kac_set_log_handler(kac_log_fn fn, void* user) {
    if (fn == nullptr) {
        kac::log::set_sink({});
        return;
    }
    kac::log::set_sink([fn, user](kac::log::Level level, const std::string& message) {
        fn(static_cast<kac_log_level>(level), message.c_str(), user);
    });
}

void kac_set_log_level(kac_log_level level) { kac::log::set_min_level(static_cast<kac::log::Level>(level)); }

kac_status kac_preset(const char* id, double* sigma, double* theta) {
    KAC_REQUIRE(id && sigma && theta, "kac_preset: null argument");
    return guarded([&] {
        const auto& p = kac::find_preset(id);
        *sigma = p.sigma;
        *theta = p.theta;
    });
}

kac_status kac_dataset_read(const char* csv_path, const char* schema_path, kac_dataset** out) {
    KAC_REQUIRE(csv_path && out, "kac_dataset_read: null argument");
    *out = nullptr;
    return guarded([&] {
        const std::filesystem::path csv(csv_path);
        const auto schema = schema_path ? std::filesystem::path(schema_path) : kac::default_schema_path(csv);
        *out = new kac_dataset{kac::read_dataset(csv, schema)};
    });
}

void kac_dataset_free(kac_dataset* data) { delete data; }

size_t kac_dataset_rows(const kac_dataset* data) { return data ? data->value.rows() : 0; }

size_t kac_dataset_cols(const kac_dataset* data) { return data ? data->value.cols() : 0; }

kac_status kac_dataset_zscore(kac_dataset* data) {
    KAC_REQUIRE(data, "kac_dataset_zscore: null dataset");
    return guarded([&] { data->value.zscore_continuous(); });
}

kac_status kac_corr_compute(const kac_dataset* data, double sigma, double theta, int centering, kac_corr** out) {
    KAC_REQUIRE(data && out, "kac_corr_compute: null argument");
    *out = nullptr;
    KAC_REQUIRE(data->value.cols() >= 2, "pseudo-correlation needs at least two variables");
    return guarded([&] {
        *out = new kac_corr{kac::pseudo_correlation_matrix(data->value, {sigma, theta}, {centering != 0})};
    });
}

void kac_corr_free(kac_corr* corr) { delete corr; }

size_t kac_corr_dim(const kac_corr* corr) { return corr ? corr->value.size() : 0; }

kac_status kac_corr_get(const kac_corr* corr, size_t i, size_t j, double* value) {
    KAC_REQUIRE(corr && value, "kac_corr_get: null argument");
    if (i >= corr->value.size() || j >= corr->value.size()) return fail(KAC_ERR_USAGE, "kac_corr_get: index out of range");
    *value = corr->value.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    return KAC_OK;
}

kac_status kac_corr_write_csv(const kac_corr* corr, const char* path) {
    KAC_REQUIRE(corr && path, "kac_corr_write_csv: null argument");
    return guarded([&] { kac::write_correlation_csv(corr->value, path); });
}

void kac_learn_options_init(kac_learn_options* options) {
    if (!options) return;
    options->algorithm = KAC_ALGO_PC;
    options->sigma = 0.001;
    options->theta = 0.5;
    options->alpha = 0.1;
    options->centering = 1;
    options->stable_skeleton = 1;
    options->max_cond_size = -1;
    options->verbose = 0;
}

kac_status kac_learn(const kac_dataset* data, const kac_learn_options* options, kac_graph** out_graph,
                     kac_corr** out_corr) {
    KAC_REQUIRE(data && options && out_graph, "kac_learn: null argument");
    *out_graph = nullptr;
    if (out_corr) *out_corr = nullptr;
    KAC_REQUIRE(data->value.cols() >= 2, "learning needs at least two variables");
    KAC_REQUIRE(options->algorithm == KAC_ALGO_PC || options->algorithm == KAC_ALGO_FCI, "unknown algorithm");
    return guarded([&] {
        kac::SearchConfig cfg;
        cfg.alpha = options->alpha;
        cfg.stable_skeleton = options->stable_skeleton != 0;
        if (options->max_cond_size >= 0) cfg.max_cond_size = options->max_cond_size;
        cfg.algorithm = options->algorithm == KAC_ALGO_FCI ? kac::Algorithm::Fci : kac::Algorithm::Pc;
        cfg.validate();
        auto corr = kac::pseudo_correlation_matrix(data->value, {options->sigma, options->theta},
                                                   {options->centering != 0});
        auto graph = kac::learn_from_correlation(corr, data->value.rows(), cfg, options->verbose != 0);
        *out_graph = new kac_graph{std::move(graph)};
        if (out_corr) *out_corr = new kac_corr{std::move(corr)};
    });
}

kac_status kac_graph_read(const char* path, kac_graph** out) {
    KAC_REQUIRE(path && out, "kac_graph_read: null argument");
    *out = nullptr;
    return guarded([&] { *out = new kac_graph{kac::read_graph_file(path)}; });
}

kac_status kac_graph_parse(const char* text, kac_graph** out) {
    KAC_REQUIRE(text && out, "kac_graph_parse: null argument");
    *out = nullptr;
    return guarded([&] { *out = new kac_graph{kac::parse_graph(std::string(text))}; });
}

kac_status kac_graph_write(const kac_graph* graph, const char* path) {
    KAC_REQUIRE(graph, "kac_graph_write: null graph");
    return guarded([&] {
        if (path == nullptr || std::strcmp(path, "-") == 0) {
            kac::write_graph(graph->value, std::cout);
            std::cout.flush();
        } else {
            kac::write_graph_file(graph->value, path);
        }
    });
}

kac_status kac_graph_to_text(const kac_graph* graph, char** out) {
    KAC_REQUIRE(graph && out, "kac_graph_to_text: null argument");
    return guarded([&] {
        const std::string text = kac::format_graph(graph->value);
        char* buf = new char[text.size() + 1];
        std::memcpy(buf, text.c_str(), text.size() + 1);
        *out = buf;
    });
}

void kac_string_free(char* s) { delete[] s; }

void kac_graph_free(kac_graph* graph) { delete graph; }

size_t kac_graph_node_count(const kac_graph* graph) { return graph ? static_cast<size_t>(graph->value.size()) : 0; }

size_t kac_graph_edge_count(const kac_graph* graph) { return graph ? graph->value.edge_count() : 0; }

const char* kac_graph_kind(const kac_graph* graph) { return graph ? kac::to_string(graph->value.kind()) : ""; }

kac_status kac_graph_dag_to_cpdag(const kac_graph* dag, kac_graph** out) {
    KAC_REQUIRE(dag && out, "kac_graph_dag_to_cpdag: null argument");
    *out = nullptr;
    return guarded([&] { *out = new kac_graph{kac::dag_to_cpdag(dag->value)}; });
}

kac_status kac_graph_true_pag(const kac_graph* dag, const char* const* latent_labels, size_t latent_count,
                              kac_graph** out) {
    KAC_REQUIRE(dag && out && (latent_count == 0 || latent_labels), "kac_graph_true_pag: null argument");
    *out = nullptr;
    return guarded([&] {
        std::vector<int> latents;
        for (size_t k = 0; k < latent_count; ++k) {
            const auto idx = dag->value.index_of(latent_labels[k]);
            if (!idx) throw kac::InputError(std::string("unknown latent label '") + latent_labels[k] + "'");
            latents.push_back(*idx);
        }
        *out = new kac_graph{kac::true_pag(dag->value, latents)};
    });
}

kac_status kac_graph_d_separated(const kac_graph* dag, int i, int j, const int* conditioning,
                                 size_t conditioning_count, int* separated) {
    KAC_REQUIRE(dag && separated && (conditioning_count == 0 || conditioning), "kac_graph_d_separated: null argument");
    return guarded([&] {
        if (dag->value.kind() != kac::GraphKind::Dag) throw kac::InputError("d-separation needs a DAG");
        std::vector<int> s(conditioning, conditioning + conditioning_count);
        *separated = kac::d_separated(dag->value, i, j, s) ? 1 : 0;
    });
}

kac_status kac_score(const kac_graph* truth, const kac_graph* learned, kac_shd_report* out) {
    KAC_REQUIRE(truth && learned && out, "kac_score: null argument");
    return guarded([&] {
        const auto r = kac::shd(truth->value, learned->value);
        *out = {r.extra, r.missing, r.wrong_mark, r.true_edges, r.shd, r.normalized, r.n_nodes};
    });
}

kac_status kac_grid_options_for_experiment(int experiment, int full_scale, uint64_t seed, kac_grid_options* out) {
    KAC_REQUIRE(out, "kac_grid_options_for_experiment: null argument");
    KAC_REQUIRE(experiment >= 1 && experiment <= 3, "experiment must be 1, 2 or 3");
    static const int desk_nodes[] = {10};
    static const int full_nodes[] = {10, 20, 30};
    static const size_t desk_sizes[] = {100, 500, 1000, 2000};
    static const size_t full_sizes[] = {100, 500, 1000, 1500, 2000, 5000};
    const auto grid = kac::experiment_grid(static_cast<kac::Experiment>(experiment), full_scale == 0, seed);
    out->node_counts = full_scale ? full_nodes : desk_nodes;
    out->node_counts_len = full_scale ? 3 : 1;
    out->sample_sizes = full_scale ? full_sizes : desk_sizes;
    out->sample_sizes_len = full_scale ? 6 : 4;
    out->group = static_cast<int>(grid.group);
    out->graphs_per_size = grid.graphs_per_size;
    out->datasets_per_graph = grid.datasets_per_graph;
    out->seed = grid.seed;
    out->expected_degree = grid.expected_degree;
    out->ordinal_levels = grid.ordinal_levels;
    out->categorical_levels = grid.categorical_levels;
    out->type_fraction_lo = grid.type_fraction_bounds.first;
    out->type_fraction_hi = grid.type_fraction_bounds.second;
    out->latents = grid.latents;
    return KAC_OK;
}

kac_status kac_simulate(const kac_grid_options* options, const char* outdir, size_t* datasets_written) {
    KAC_REQUIRE(options && outdir, "kac_simulate: null argument");
    KAC_REQUIRE(options->group == 1 || options->group == 2, "group must be 1 or 2");
    KAC_REQUIRE(options->node_counts && options->sample_sizes, "kac_simulate: missing node counts or sample sizes");
    return guarded([&] {
        kac::GridSpec spec;
        spec.node_counts.assign(options->node_counts, options->node_counts + options->node_counts_len);
        spec.sample_sizes.assign(options->sample_sizes, options->sample_sizes + options->sample_sizes_len);
        spec.group = static_cast<kac::TypeGroup>(options->group);
        spec.graphs_per_size = options->graphs_per_size;
        spec.datasets_per_graph = options->datasets_per_graph;
        spec.seed = options->seed;
        spec.expected_degree = options->expected_degree;
        spec.ordinal_levels = options->ordinal_levels;
        spec.categorical_levels = options->categorical_levels;
        spec.type_fraction_bounds = {options->type_fraction_lo, options->type_fraction_hi};
        spec.latents = options->latents;
        const auto manifest = kac::generate_grid(spec, outdir);
        size_t count = 0;
        for (const auto& e : manifest) count += e.kind == "dataset";
        if (datasets_written) *datasets_written = count;
    });
}

kac_status kac_bench_run(const kac_bench_options* options, const char* manifest_path, const char* outdir,
                         kac_bench_result* out) {
    KAC_REQUIRE(options && manifest_path && outdir, "kac_bench_run: null argument");
    KAC_REQUIRE(options->experiment >= 1 && options->experiment <= 3, "experiment must be 1, 2 or 3");
    KAC_REQUIRE(options->presets_len == 0 || options->presets, "kac_bench_run: null preset list");
    return guarded([&] {
        kac::ExperimentSpec spec;
        spec.experiment = static_cast<kac::Experiment>(options->experiment);
        for (size_t k = 0; k < options->presets_len; ++k) spec.presets.emplace_back(options->presets[k]);
        spec.alpha = options->alpha;
        spec.centering = options->centering != 0;
        spec.stable_skeleton = options->stable_skeleton != 0;
        if (options->max_cond_size >= 0) spec.max_cond_size = options->max_cond_size;
        spec.jobs = options->jobs;
        const auto rows = kac::run_experiment(spec, manifest_path);

        const std::filesystem::path dir(outdir);
        std::error_code ec;
        std::filesystem::create_directories(dir, ec);
        if (ec) throw kac::IoError("cannot create " + dir.string() + ": " + ec.message());
        kac::write_scores(rows, dir / "scores.csv");
        kac::write_timings(rows, dir / "timings.csv");
        size_t failed = 0;
        for (const auto& r : rows) failed += !r.ok;
        const bool any_ok = failed < rows.size();
        const auto summary = any_ok ? kac::summarize(rows) : std::vector<kac::SummaryRow>{};
        kac::write_summary(summary, dir / "summary.csv");
        if (options->plot_data) kac::write_plot_data(summary, dir);
        if (out) *out = {rows.size(), failed};
    });
}

}  // extern "C"
