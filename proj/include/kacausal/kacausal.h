/*
 * kacausal: causal structure learning on mixed-type data through kernel
 * alignment pseudo-correlations.
 *
 * C interface. Every object is an opaque handle owned by the caller and
 * released with its matching *_free function. Functions return a kac_status;
 * on failure kac_last_error() describes the problem (thread-local, valid until
 * the next failing call on the same thread).
 */
#ifndef KACAUSAL_H
#define KACAUSAL_H

#include <stddef.h>
#include <stdint.h>

#if defined(KAC_BUILDING_LIBRARY)
#define KAC_API __attribute__((visibility("default")))
#else
#define KAC_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes double as CLI exit codes where they overlap. */
typedef enum kac_status {
    KAC_OK = 0,
    KAC_ERR_USAGE = 2,   /* invalid argument or parameter */
    KAC_ERR_DATA = 3,    /* malformed or inconsistent input data/files */
    KAC_ERR_NUMERIC = 4, /* numerical or other internal failure */
    KAC_ERR_IO = 5       /* file could not be opened, created or written */
} kac_status;

typedef struct kac_dataset kac_dataset;
typedef struct kac_graph kac_graph;
typedef struct kac_corr kac_corr;

typedef enum kac_log_level { KAC_LOG_DEBUG = 0, KAC_LOG_INFO = 1, KAC_LOG_WARN = 2, KAC_LOG_ERROR = 3 } kac_log_level;
typedef void (*kac_log_fn)(kac_log_level level, const char* message, void* user);

KAC_API const char* kac_version(void);
KAC_API const char* kac_last_error(void);

/* NULL handler restores the default (stderr). */
KAC_API void kac_set_log_handler(kac_log_fn fn, void* user);
KAC_API void kac_set_log_level(kac_log_level level);

/* Kernel parameter presets "P1".."P9". */
KAC_API kac_status kac_preset(const char* id, double* sigma, double* theta);

/* ---- datasets ---------------------------------------------------------- */

/* schema_path may be NULL: the CSV path with its extension replaced by .schema. */
KAC_API kac_status kac_dataset_read(const char* csv_path, const char* schema_path, kac_dataset** out);
KAC_API void kac_dataset_free(kac_dataset* data);
KAC_API size_t kac_dataset_rows(const kac_dataset* data);
KAC_API size_t kac_dataset_cols(const kac_dataset* data);
/* Standardizes continuous columns in place. */
KAC_API kac_status kac_dataset_zscore(kac_dataset* data);

/* ---- pseudo-correlation ------------------------------------------------ */

KAC_API kac_status kac_corr_compute(const kac_dataset* data, double sigma, double theta, int centering,
                                    kac_corr** out);
KAC_API void kac_corr_free(kac_corr* corr);
KAC_API size_t kac_corr_dim(const kac_corr* corr);
KAC_API kac_status kac_corr_get(const kac_corr* corr, size_t i, size_t j, double* value);
KAC_API kac_status kac_corr_write_csv(const kac_corr* corr, const char* path);

/* ---- learning ---------------------------------------------------------- */

typedef enum kac_algorithm { KAC_ALGO_PC = 0, KAC_ALGO_FCI = 1 } kac_algorithm;

typedef struct kac_learn_options {
    kac_algorithm algorithm;
    double sigma;
    double theta;
    double alpha;
    int centering;       /* nonzero: center kernel matrices (default 1) */
    int stable_skeleton; /* nonzero: order-independent skeleton (default 1) */
    int max_cond_size;   /* negative: unlimited (default -1) */
    int verbose;         /* nonzero: log every CI query at debug level */
} kac_learn_options;

/* PC, P1 kernel widths, alpha 0.1, centering and stable skeleton on. */
KAC_API void kac_learn_options_init(kac_learn_options* options);

/* out_corr may be NULL; when given it receives the pseudo-correlation used. */
KAC_API kac_status kac_learn(const kac_dataset* data, const kac_learn_options* options, kac_graph** out_graph,
                             kac_corr** out_corr);

/* ---- graphs ------------------------------------------------------------ */

KAC_API kac_status kac_graph_read(const char* path, kac_graph** out);
KAC_API kac_status kac_graph_parse(const char* text, kac_graph** out);
/* path NULL or "-" writes to stdout. */
KAC_API kac_status kac_graph_write(const kac_graph* graph, const char* path);
/* Caller releases *out with kac_string_free. */
KAC_API kac_status kac_graph_to_text(const kac_graph* graph, char** out);
KAC_API void kac_string_free(char* s);
KAC_API void kac_graph_free(kac_graph* graph);
KAC_API size_t kac_graph_node_count(const kac_graph* graph);
KAC_API size_t kac_graph_edge_count(const kac_graph* graph);
/* "dag", "cpdag", "pag" or "pdag". */
KAC_API const char* kac_graph_kind(const kac_graph* graph);
KAC_API kac_status kac_graph_dag_to_cpdag(const kac_graph* dag, kac_graph** out);
KAC_API kac_status kac_graph_true_pag(const kac_graph* dag, const char* const* latent_labels, size_t latent_count,
                                      kac_graph** out);
/* d-separation of nodes i and j given the listed nodes (indices into the DAG). */
KAC_API kac_status kac_graph_d_separated(const kac_graph* dag, int i, int j, const int* conditioning,
                                         size_t conditioning_count, int* separated);

/* ---- scoring ----------------------------------------------------------- */

typedef struct kac_shd_report {
    size_t extra;
    size_t missing;
    size_t wrong_mark;
    size_t true_edges; /* in both graphs with identical marks */
    size_t shd;
    double normalized;
    size_t n_nodes;
} kac_shd_report;

KAC_API kac_status kac_score(const kac_graph* truth, const kac_graph* learned, kac_shd_report* out);

/* ---- simulation -------------------------------------------------------- */

typedef struct kac_grid_options {
    const int* node_counts;
    size_t node_counts_len;
    int group; /* 1 or 2 */
    int graphs_per_size;
    int datasets_per_graph;
    const size_t* sample_sizes;
    size_t sample_sizes_len;
    uint64_t seed;
    double expected_degree;
    int ordinal_levels;
    int categorical_levels;
    double type_fraction_lo;
    double type_fraction_hi;
    int latents; /* 0: none, -1: 1/4/8 for p = 10/20/30, k > 0: fixed */
} kac_grid_options;

/* Desk-scale defaults for the given experiment (1, 2 or 3); full_scale selects
 * the large grid. Arrays point at static storage. */
KAC_API kac_status kac_grid_options_for_experiment(int experiment, int full_scale, uint64_t seed,
                                                   kac_grid_options* out);

/* Writes DAGs, datasets, schemas, latent lists and manifest.csv below outdir. */
KAC_API kac_status kac_simulate(const kac_grid_options* options, const char* outdir, size_t* datasets_written);

/* ---- benchmark --------------------------------------------------------- */

typedef struct kac_bench_options {
    int experiment; /* 1, 2 or 3 */
    const char* const* presets;
    size_t presets_len;
    double alpha;
    int centering;
    int stable_skeleton;
    int max_cond_size; /* negative: unlimited */
    int jobs;
    int plot_data; /* nonzero: also write plot_<preset>_p<p>.dat files */
} kac_bench_options;

typedef struct kac_bench_result {
    size_t rows;
    size_t failed;
} kac_bench_result;

/* Runs every (dataset, preset) cell of the manifest and writes scores.csv,
 * timings.csv and summary.csv into outdir. */
KAC_API kac_status kac_bench_run(const kac_bench_options* options, const char* manifest_path, const char* outdir,
                                 kac_bench_result* out);

#ifdef __cplusplus
}
#endif

#endif /* KACAUSAL_H */
