#include <gtest/gtest.h>

#include "bench.hpp"
#include "errors.hpp"
#include "support.hpp"

using namespace kac;

namespace {

std::filesystem::path small_grid(const std::string& name, Experiment e, std::vector<std::size_t> sizes) {
    const auto dir = testkit::fresh_dir(name);
    auto grid = experiment_grid(e, true, 7);
    grid.sample_sizes = std::move(sizes);
    generate_grid(grid, dir);
    return dir / "manifest.csv";
}

ScoreRow row(const std::string& preset, double normalized) {
    ScoreRow r;
    r.params_id = preset;
    r.p = 10;
    r.n = 100;
    r.report.normalized = normalized;
    r.runtime_ms = 2.0;
    return r;
}

std::vector<std::string> all_presets() {
    std::vector<std::string> ids;
    for (const auto& p : param_presets()) ids.push_back(p.id);
    return ids;
}

}  // namespace

TEST(Presets, TableValues) {
    const double sigma[] = {0.001, 0.01, 0.1, 0.001, 0.01, 0.1, 0.001, 0.01, 0.1};
    const double theta[] = {0.5, 1.0, 1.5, 1.0, 1.5, 0.5, 1.5, 0.5, 1.0};
    ASSERT_EQ(param_presets().size(), 9U);
    for (std::size_t k = 0; k < 9; ++k) {
        const auto& p = find_preset("P" + std::to_string(k + 1));
        EXPECT_EQ(p.sigma, sigma[k]);
        EXPECT_EQ(p.theta, theta[k]);
    }
    EXPECT_THROW(find_preset("P10"), ParamError);
}

TEST(Experiments, GroupsAndAlgorithms) {
    EXPECT_EQ(experiment_group(Experiment::Exp1), TypeGroup::Group1);
    EXPECT_EQ(experiment_group(Experiment::Exp2), TypeGroup::Group2);
    EXPECT_EQ(experiment_algorithm(Experiment::Exp1), Algorithm::Pc);
    EXPECT_EQ(experiment_algorithm(Experiment::Exp3), Algorithm::Fci);
    const auto desk = experiment_grid(Experiment::Exp2, true, 7);
    EXPECT_EQ(desk.node_counts, std::vector<int>{10});
    EXPECT_EQ(desk.graphs_per_size * desk.datasets_per_graph, 6);
    EXPECT_EQ(desk.sample_sizes, (std::vector<std::size_t>{100, 500, 1000, 2000}));
    const auto full = experiment_grid(Experiment::Exp3, false, 7);
    EXPECT_EQ(full.node_counts, (std::vector<int>{10, 20, 30}));
    EXPECT_EQ(full.sample_sizes.back(), 5000U);
    EXPECT_EQ(full.latents, -1);
}

TEST(RunExperiment, CellCountForDeskGrid) {
    const auto manifest = small_grid("bench_cells", Experiment::Exp2, {100, 1000});
    ExperimentSpec spec;
    spec.presets = all_presets();
    const auto rows = run_experiment(spec, manifest);
    EXPECT_EQ(rows.size(), 108U);
    for (const auto& r : rows) {
        EXPECT_TRUE(r.ok) << r.error;
        EXPECT_EQ(r.algorithm, "kapc");
        EXPECT_EQ(r.p, 10);
    }
}

TEST(RunExperiment, DeterministicAcrossJobCounts) {
    const auto manifest = small_grid("bench_det", Experiment::Exp2, {100});
    ExperimentSpec spec;
    spec.presets = {"P2", "P9"};
    const auto a = run_experiment(spec, manifest);
    spec.jobs = 3;
    const auto b = run_experiment(spec, manifest);
    const auto dir = testkit::fresh_dir("bench_det_out");
    write_scores(a, dir / "a.csv");
    write_scores(b, dir / "b.csv");
    EXPECT_EQ(testkit::slurp(dir / "a.csv"), testkit::slurp(dir / "b.csv"));
}

TEST(RunExperiment, EmptyPresetListGivesEmptyTable) {
    const auto manifest = small_grid("bench_empty", Experiment::Exp2, {100});
    EXPECT_TRUE(run_experiment({}, manifest).empty());
}

TEST(RunExperiment, LatentExperimentScoresAgainstPag) {
    const auto manifest = small_grid("bench_exp3", Experiment::Exp3, {200});
    ExperimentSpec spec;
    spec.experiment = Experiment::Exp3;
    spec.presets = {"P9"};
    const auto rows = run_experiment(spec, manifest);
    ASSERT_EQ(rows.size(), 6U);
    for (const auto& r : rows) {
        EXPECT_TRUE(r.ok) << r.error;
        EXPECT_EQ(r.algorithm, "kafci");
        EXPECT_EQ(r.report.n_nodes, 9U);
    }
}

TEST(RunExperiment, GroupMismatchAndMissingManifest) {
    const auto manifest = small_grid("bench_mismatch", Experiment::Exp2, {100});
    ExperimentSpec spec;
    spec.experiment = Experiment::Exp1;
    spec.presets = {"P1"};
    EXPECT_THROW(run_experiment(spec, manifest), InputError);
    EXPECT_THROW(run_experiment({}, manifest.parent_path() / "nope.csv"), IoError);
}

TEST(Summarize, MeansAndSampleSd) {
    const auto one = summarize({row("P1", 0.25)});
    ASSERT_EQ(one.size(), 1U);
    EXPECT_EQ(one[0].mean_normalized, 0.25);
    EXPECT_EQ(one[0].sd_normalized, 0.0);
    const auto two = summarize({row("P1", 0.2), row("P1", 0.4)});
    ASSERT_EQ(two.size(), 1U);
    EXPECT_NEAR(two[0].mean_normalized, 0.3, 1e-15);
    EXPECT_NEAR(two[0].sd_normalized, 0.1414, 1e-4);
    EXPECT_EQ(two[0].count, 2U);
    EXPECT_EQ(two[0].mean_runtime_ms, 2.0);
}

TEST(Summarize, KeepsGroupsApartInPresetOrder) {
    auto b = row("P2", 0.5);
    b.n = 500;
    const auto s = summarize({row("P9", 0.1), b, row("P2", 0.3)});
    ASSERT_EQ(s.size(), 3U);
    EXPECT_EQ(s[0].params_id, "P2");
    EXPECT_EQ(s[0].n, 100U);
    EXPECT_EQ(s[1].n, 500U);
    EXPECT_EQ(s[2].params_id, "P9");
    EXPECT_THROW(summarize({}), InputError);
}

TEST(Summarize, SkipsFailedRows) {
    auto bad = row("P1", 9.0);
    bad.ok = false;
    const auto s = summarize({row("P1", 0.5), bad});
    ASSERT_EQ(s.size(), 1U);
    EXPECT_EQ(s[0].count, 1U);
}

TEST(WriteScores, FailedRowsKeepStatus) {
    auto good = row("P1", 0.5);
    good.dataset_id = "p10_g0/d0_n100";
    good.algorithm = "kapc";
    auto bad = good;
    bad.ok = false;
    bad.error = "boom";
    const auto dir = testkit::fresh_dir("scores_fmt");
    write_scores({good, bad}, dir / "s.csv");
    EXPECT_EQ(testkit::slurp(dir / "s.csv"),
              "dataset_id,algorithm,params_id,n,extra,missing,wrong_mark,shd,normalized,status\n"
              "p10_g0/d0_n100,kapc,P1,100,0,0,0,0,0.5,ok\n"
              "p10_g0/d0_n100,kapc,P1,100,,,,,,failed: boom\n");
}
