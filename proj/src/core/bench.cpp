#include "bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <map>
#include <thread>
#include <tuple>

#include "errors.hpp"
#include "graph_io.hpp"
#include "log.hpp"
#include "text_util.hpp"

namespace kac {
namespace {

struct Cell {
    std::string dataset_id;
    std::filesystem::path csv;
    std::filesystem::path schema;
    std::filesystem::path dag;
    std::optional<std::filesystem::path> latents;
    int p = 0;
    std::size_t n = 0;
    int group = 0;
};

std::string strip_extension(const std::string& path) {
    const auto dot = path.rfind('.');
    return dot == std::string::npos ? path : path.substr(0, dot);
}

std::vector<Cell> collect_cells(const std::filesystem::path& manifest_path) {
    const auto entries = read_manifest(manifest_path);
    const auto base = manifest_path.parent_path();
    std::vector<Cell> cells;
    std::optional<std::filesystem::path> current_dag;
    for (const auto& e : entries) {
        if (e.kind == "dag") {
            current_dag = base / e.path;
        } else if (e.kind == "dataset") {
            if (!current_dag) throw FormatError(manifest_path.string() + ": dataset row before any dag row");
            Cell c;
            c.dataset_id = strip_extension(e.path);
            c.csv = base / e.path;
            c.schema = default_schema_path(c.csv);
            c.dag = *current_dag;
            c.p = e.p;
            c.n = e.n;
            c.group = e.group;
            cells.push_back(std::move(c));
        } else if (e.kind == "schema") {
            if (cells.empty()) throw FormatError(manifest_path.string() + ": schema row before any dataset row");
            cells.back().schema = base / e.path;
        } else if (e.kind == "latents") {
            if (cells.empty()) throw FormatError(manifest_path.string() + ": latents row before any dataset row");
            cells.back().latents = base / e.path;
        } else {
            throw FormatError(manifest_path.string() + ": unknown manifest kind '" + e.kind + "'");
        }
    }
    return cells;
}

MixedGraph truth_for(const Cell& cell, Experiment experiment, const Dataset& data) {
    const MixedGraph dag = read_graph_file(cell.dag);
    if (experiment != Experiment::Exp3) return dag_to_cpdag(dag);
    std::vector<int> latents;
    const auto observed = data.labels();
    for (int v = 0; v < dag.size(); ++v) {
        if (std::find(observed.begin(), observed.end(), dag.label(v)) == observed.end()) latents.push_back(v);
    }
    if (cell.latents) {
        const auto listed = read_label_list(*cell.latents);
        if (listed.size() != latents.size()) {
            throw FormatError(cell.latents->string() + " disagrees with the dataset's columns");
        }
    }
    return true_pag(dag, latents);
}

std::string sanitize(std::string s) {
    std::replace(s.begin(), s.end(), ',', ';');
    std::replace(s.begin(), s.end(), '\n', ' ');
    return s;
}

}  // namespace

const std::vector<ParamPreset>& param_presets() {
    static const std::vector<ParamPreset> presets{
        {"P1", 0.001, 0.5}, {"P2", 0.01, 1.0}, {"P3", 0.1, 1.5}, {"P4", 0.001, 1.0}, {"P5", 0.01, 1.5},
        {"P6", 0.1, 0.5},   {"P7", 0.001, 1.5}, {"P8", 0.01, 0.5}, {"P9", 0.1, 1.0},
    };
    return presets;
}

const ParamPreset& find_preset(const std::string& id) {
    for (const auto& p : param_presets()) {
        if (p.id == id) return p;
    }
    throw ParamError("unknown parameter preset '" + id + "' (expected P1..P9)");
}

TypeGroup experiment_group(Experiment e) { return e == Experiment::Exp1 ? TypeGroup::Group1 : TypeGroup::Group2; }

Algorithm experiment_algorithm(Experiment e) { return e == Experiment::Exp3 ? Algorithm::Fci : Algorithm::Pc; }

GridSpec experiment_grid(Experiment e, bool desk_scale, std::uint64_t seed) {
    GridSpec g;
    g.group = experiment_group(e);
    g.seed = seed;
    g.latents = e == Experiment::Exp3 ? -1 : 0;
    if (desk_scale) {
        g.node_counts = {10};
        g.graphs_per_size = 3;
        g.datasets_per_graph = 2;
        g.sample_sizes = {100, 500, 1000, 2000};
    } else {
        g.node_counts = {10, 20, 30};
        g.graphs_per_size = 10;
        g.datasets_per_graph = 5;
        g.sample_sizes = {100, 500, 1000, 1500, 2000, 5000};
    }
    return g;
}

std::vector<ScoreRow> run_experiment(const ExperimentSpec& spec, const std::filesystem::path& manifest) {
    if (!(spec.alpha > 0.0 && spec.alpha < 1.0)) throw ParamError("alpha must lie in (0, 1)");
    std::vector<ParamPreset> presets;
    for (const auto& id : spec.presets) presets.push_back(find_preset(id));
    const auto cells = collect_cells(manifest);
    const int want_group = static_cast<int>(experiment_group(spec.experiment));
    for (const auto& c : cells) {
        if (c.group != want_group) {
            throw InputError("experiment " + std::to_string(static_cast<int>(spec.experiment)) + " needs group " +
                             std::to_string(want_group) + " data, manifest has group " + std::to_string(c.group));
        }
    }
    if (presets.empty()) return {};

    const std::string algorithm = spec.experiment == Experiment::Exp3 ? "kafci" : "kapc";
    SearchConfig cfg;
    cfg.alpha = spec.alpha;
    cfg.max_cond_size = spec.max_cond_size;
    cfg.stable_skeleton = spec.stable_skeleton;
    cfg.algorithm = experiment_algorithm(spec.experiment);

    std::vector<ScoreRow> rows(cells.size() * presets.size());
    // One work item per dataset; it fills the rows of every preset.
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t d = next++; d < cells.size(); d = next++) {
            const Cell& cell = cells[d];
            std::optional<Dataset> data;
            std::optional<MixedGraph> truth;
            std::string setup_error;
            try {
                data = read_dataset(cell.csv, cell.schema);
                truth = truth_for(cell, spec.experiment, *data);
            } catch (const std::exception& err) {
                setup_error = err.what();
            }
            for (std::size_t k = 0; k < presets.size(); ++k) {
                ScoreRow& row = rows[d * presets.size() + k];
                row.dataset_id = cell.dataset_id;
                row.algorithm = algorithm;
                row.params_id = presets[k].id;
                row.p = cell.p;
                row.n = cell.n;
                try {
                    if (!setup_error.empty()) throw std::runtime_error(setup_error);
                    const auto start = std::chrono::steady_clock::now();
                    const auto corr = pseudo_correlation_matrix(*data, {presets[k].sigma, presets[k].theta}, {spec.centering});
                    const MixedGraph learned = learn_from_correlation(corr, data->rows(), cfg);
                    const auto stop = std::chrono::steady_clock::now();
                    row.runtime_ms = std::chrono::duration<double, std::milli>(stop - start).count();
                    row.report = shd(*truth, learned);
                } catch (const std::exception& err) {
                    row.ok = false;
                    row.error = err.what();
                    log::error("cell " + cell.dataset_id + " / " + presets[k].id + " failed: " + err.what());
                }
            }
        }
    };
    const int jobs = std::max(1, spec.jobs);
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    return rows;
}

std::vector<SummaryRow> summarize(const std::vector<ScoreRow>& rows) {
    if (rows.empty()) throw InputError("cannot summarize an empty score table");
    std::map<std::string, std::size_t> preset_rank;
    for (std::size_t k = 0; k < param_presets().size(); ++k) preset_rank[param_presets()[k].id] = k;
    using Key = std::tuple<std::size_t, std::string, int, std::size_t>;
    std::map<Key, std::vector<const ScoreRow*>> groups;
    for (const auto& r : rows) {
        if (!r.ok) continue;
        const auto it = preset_rank.find(r.params_id);
        const std::size_t rank = it == preset_rank.end() ? preset_rank.size() : it->second;
        groups[{rank, r.params_id, r.p, r.n}].push_back(&r);
    }
    std::vector<SummaryRow> out;
    for (const auto& [key, members] : groups) {
        SummaryRow s;
        s.params_id = std::get<1>(key);
        s.p = std::get<2>(key);
        s.n = std::get<3>(key);
        s.count = members.size();
        double total = 0.0, runtime = 0.0;
        for (const auto* r : members) {
            total += r->report.normalized;
            runtime += r->runtime_ms;
        }
        s.mean_normalized = total / static_cast<double>(s.count);
        s.mean_runtime_ms = runtime / static_cast<double>(s.count);
        if (s.count > 1) {
            double ss = 0.0;
            for (const auto* r : members) ss += (r->report.normalized - s.mean_normalized) * (r->report.normalized - s.mean_normalized);
            s.sd_normalized = std::sqrt(ss / static_cast<double>(s.count - 1));
        }
        out.push_back(s);
    }
    return out;
}

void write_scores(const std::vector<ScoreRow>& rows, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    out << "dataset_id,algorithm,params_id,n,extra,missing,wrong_mark,shd,normalized,status\n";
    for (const auto& r : rows) {
        out << r.dataset_id << ',' << r.algorithm << ',' << r.params_id << ',' << r.n << ',';
        if (r.ok) {
            out << format_report_fields(r.report) << ",ok\n";
        } else {
            out << ",,,,,failed: " << sanitize(r.error) << '\n';
        }
    }
    if (!out) throw IoError("write failed: " + path.string());
}

void write_timings(const std::vector<ScoreRow>& rows, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    out << "dataset_id,algorithm,params_id,n,runtime_ms\n";
    for (const auto& r : rows) {
        out << r.dataset_id << ',' << r.algorithm << ',' << r.params_id << ',' << r.n << ',' << format_double(r.runtime_ms) << '\n';
    }
    if (!out) throw IoError("write failed: " + path.string());
}

void write_summary(const std::vector<SummaryRow>& rows, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    out << "params_id,p,n,count,mean_normalized_shd,sd_normalized_shd,mean_runtime_ms\n";
    for (const auto& s : rows) {
        out << s.params_id << ',' << s.p << ',' << s.n << ',' << s.count << ',' << format_double(s.mean_normalized) << ','
            << format_double(s.sd_normalized) << ',' << format_double(s.mean_runtime_ms) << '\n';
    }
    if (!out) throw IoError("write failed: " + path.string());
}

void write_plot_data(const std::vector<SummaryRow>& rows, const std::filesystem::path& dir) {
    std::map<std::pair<std::string, int>, std::vector<const SummaryRow*>> series;
    for (const auto& s : rows) series[{s.params_id, s.p}].push_back(&s);
    for (const auto& [key, members] : series) {
        const auto path = dir / ("plot_" + key.first + "_p" + std::to_string(key.second) + ".dat");
        std::ofstream out(path, std::ios::binary);
        if (!out) throw IoError("cannot open " + path.string() + " for writing");
        out << "# n mean_normalized_shd sd_normalized_shd\n";
        for (const auto* s : members) {
            out << s->n << ' ' << format_double(s->mean_normalized) << ' ' << format_double(s->sd_normalized) << '\n';
        }
    }
}

}  // namespace kac
