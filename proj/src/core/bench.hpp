#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "discovery.hpp"
#include "metrics.hpp"
#include "simdata.hpp"

namespace kac {

/// Kernel width pairs P1..P9.
struct ParamPreset {
    std::string id;
    double sigma;
    double theta;
};

const std::vector<ParamPreset>& param_presets();
/// Throws ParamError for an unknown id.
const ParamPreset& find_preset(const std::string& id);

enum class Experiment { Exp1 = 1, Exp2 = 2, Exp3 = 3 };

TypeGroup experiment_group(Experiment e);
Algorithm experiment_algorithm(Experiment e);

/// Data grid for an experiment. Desk scale: p = 10, 3 graphs x 2 datasets,
/// n in {100, 500, 1000, 2000}. Full scale: p in {10, 20, 30}, 10 graphs x 5
/// datasets, n in {100, 500, 1000, 1500, 2000, 5000}. Experiment 3 masks
/// latents (1/4/8 for p = 10/20/30).
GridSpec experiment_grid(Experiment e, bool desk_scale, std::uint64_t seed);

struct ExperimentSpec {
    Experiment experiment = Experiment::Exp2;
    std::vector<std::string> presets;  // ids; empty means no cells
    double alpha = 0.1;
    bool centering = true;
    bool stable_skeleton = true;
    std::optional<int> max_cond_size;
    int jobs = 1;
};

struct ScoreRow {
    std::string dataset_id;
    std::string algorithm;  // kapc | kafci
    std::string params_id;
    int p = 0;
    std::size_t n = 0;
    ShdReport report;
    double runtime_ms = 0.0;  // alignment plus search, excluding I/O
    bool ok = true;
    std::string error;
};

/// Runs the experiment's algorithm on every (dataset, preset) cell of the
/// manifest and scores against the true CPDAG (Exp1/Exp2) or the true PAG
/// over the observed variables (Exp3). Failing cells become rows with
/// ok == false. Rows come back in manifest order, then preset order,
/// independent of `jobs`.
std::vector<ScoreRow> run_experiment(const ExperimentSpec& spec, const std::filesystem::path& manifest);

struct SummaryRow {
    std::string params_id;
    int p = 0;
    std::size_t n = 0;
    std::size_t count = 0;
    double mean_normalized = 0.0;
    double sd_normalized = 0.0;  // sample standard deviation; 0 for one row
    double mean_runtime_ms = 0.0;
};

/// Mean and sd of normalized SHD per (preset, p, n) over successful rows.
std::vector<SummaryRow> summarize(const std::vector<ScoreRow>& rows);

void write_scores(const std::vector<ScoreRow>& rows, const std::filesystem::path& path);
void write_timings(const std::vector<ScoreRow>& rows, const std::filesystem::path& path);
void write_summary(const std::vector<SummaryRow>& rows, const std::filesystem::path& path);
/// One gnuplot-style `plot_<preset>_p<p>.dat` file per (preset, p): columns n, mean, sd.
void write_plot_data(const std::vector<SummaryRow>& rows, const std::filesystem::path& dir);

}  // namespace kac
