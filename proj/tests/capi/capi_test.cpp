#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "kacausal/kacausal.h"

namespace {

std::filesystem::path fresh_dir(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / ("kacausal_capi_" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

std::filesystem::path simulate_one(const std::string& name, std::size_t n) {
    const auto dir = fresh_dir(name);
    kac_grid_options g{};
    EXPECT_EQ(kac_grid_options_for_experiment(2, 0, 7, &g), KAC_OK);
    const int nodes[] = {6};
    const std::size_t sizes[] = {n};
    g.node_counts = nodes;
    g.node_counts_len = 1;
    g.sample_sizes = sizes;
    g.sample_sizes_len = 1;
    g.graphs_per_size = 1;
    g.datasets_per_graph = 1;
    std::size_t written = 0;
    EXPECT_EQ(kac_simulate(&g, dir.string().c_str(), &written), KAC_OK) << kac_last_error();
    EXPECT_EQ(written, 1U);
    return dir;
}

struct Captured {
    std::vector<std::string> messages;
};

void capture(kac_log_level, const char* message, void* user) {
    static_cast<Captured*>(user)->messages.emplace_back(message);
}

}  // namespace

TEST(CApi, VersionAndPresets) {
    EXPECT_STRNE(kac_version(), "");
    double s = 0, t = 0;
    ASSERT_EQ(kac_preset("P5", &s, &t), KAC_OK);
    EXPECT_EQ(s, 0.01);
    EXPECT_EQ(t, 1.5);
    EXPECT_EQ(kac_preset("P0", &s, &t), KAC_ERR_USAGE);
    EXPECT_NE(std::string(kac_last_error()).find("P0"), std::string::npos);
    EXPECT_EQ(kac_preset(nullptr, &s, &t), KAC_ERR_USAGE);
}

TEST(CApi, LearnAndScoreRoundTrip) {
    const auto dir = simulate_one("learn", 300);
    kac_dataset* data = nullptr;
    ASSERT_EQ(kac_dataset_read((dir / "p6_g0/d0_n300.csv").string().c_str(), nullptr, &data), KAC_OK) << kac_last_error();
    EXPECT_EQ(kac_dataset_rows(data), 300U);
    EXPECT_EQ(kac_dataset_cols(data), 6U);

    kac_learn_options opts;
    kac_learn_options_init(&opts);
    opts.sigma = 0.1;
    opts.theta = 1.0;
    kac_graph* learned = nullptr;
    kac_corr* corr = nullptr;
    ASSERT_EQ(kac_learn(data, &opts, &learned, &corr), KAC_OK) << kac_last_error();
    EXPECT_STREQ(kac_graph_kind(learned), "cpdag");
    EXPECT_EQ(kac_graph_node_count(learned), 6U);
    ASSERT_EQ(kac_corr_dim(corr), 6U);
    double v = 0;
    ASSERT_EQ(kac_corr_get(corr, 2, 2, &v), KAC_OK);
    EXPECT_EQ(v, 1.0);
    EXPECT_EQ(kac_corr_get(corr, 6, 0, &v), KAC_ERR_USAGE);

    kac_graph* dag = nullptr;
    kac_graph* truth = nullptr;
    ASSERT_EQ(kac_graph_read((dir / "p6_g0/dag.txt").string().c_str(), &dag), KAC_OK);
    ASSERT_EQ(kac_graph_dag_to_cpdag(dag, &truth), KAC_OK);
    kac_shd_report r{};
    ASSERT_EQ(kac_score(truth, learned, &r), KAC_OK);
    EXPECT_EQ(r.shd, r.extra + r.missing + r.wrong_mark);
    EXPECT_EQ(r.n_nodes, 6U);
    EXPECT_EQ(kac_score(dag, learned, &r), KAC_ERR_DATA);

    char* text = nullptr;
    ASSERT_EQ(kac_graph_to_text(learned, &text), KAC_OK);
    kac_graph* reparsed = nullptr;
    ASSERT_EQ(kac_graph_parse(text, &reparsed), KAC_OK);
    kac_shd_report same{};
    ASSERT_EQ(kac_score(learned, reparsed, &same), KAC_OK);
    EXPECT_EQ(same.shd, 0U);

    kac_string_free(text);
    kac_graph_free(reparsed);
    kac_graph_free(truth);
    kac_graph_free(dag);
    kac_graph_free(learned);
    kac_corr_free(corr);
    kac_dataset_free(data);
}

TEST(CApi, FciProducesPag) {
    const auto dir = simulate_one("fci", 200);
    kac_dataset* data = nullptr;
    ASSERT_EQ(kac_dataset_read((dir / "p6_g0/d0_n200.csv").string().c_str(), nullptr, &data), KAC_OK);
    kac_learn_options opts;
    kac_learn_options_init(&opts);
    opts.algorithm = KAC_ALGO_FCI;
    kac_graph* pag = nullptr;
    ASSERT_EQ(kac_learn(data, &opts, &pag, nullptr), KAC_OK) << kac_last_error();
    EXPECT_STREQ(kac_graph_kind(pag), "pag");
    kac_graph_free(pag);
    kac_dataset_free(data);
}

TEST(CApi, ErrorStatuses) {
    const auto dir = fresh_dir("errors");
    kac_dataset* data = nullptr;
    EXPECT_EQ(kac_dataset_read((dir / "none.csv").string().c_str(), nullptr, &data), KAC_ERR_IO);
    EXPECT_EQ(data, nullptr);
    std::ofstream(dir / "one.csv") << "x\n1\n2\n3\n";
    std::ofstream(dir / "one.schema") << "x,continuous\n";
    std::ofstream(dir / "bad.csv") << "x,y\n1,2\n";
    std::ofstream(dir / "bad.schema") << "x,continuous\ny,weird\n";
    EXPECT_EQ(kac_dataset_read((dir / "bad.csv").string().c_str(), nullptr, &data), KAC_ERR_DATA);
    ASSERT_EQ(kac_dataset_read((dir / "one.csv").string().c_str(), nullptr, &data), KAC_OK);
    kac_learn_options opts;
    kac_learn_options_init(&opts);
    kac_graph* g = nullptr;
    EXPECT_EQ(kac_learn(data, &opts, &g, nullptr), KAC_ERR_USAGE);
    kac_dataset_free(data);

    kac_graph* parsed = nullptr;
    EXPECT_EQ(kac_graph_parse("#kind: dag\n#nodes: A,B\nA ~> B\n", &parsed), KAC_ERR_DATA);
    EXPECT_NE(std::string(kac_last_error()).find("line 3"), std::string::npos);
}

TEST(CApi, GraphQueries) {
    kac_graph* dag = nullptr;
    ASSERT_EQ(kac_graph_parse("#kind: dag\n#nodes: A,L,B\nA -> L\nL -> B\n", &dag), KAC_OK);
    int sep = -1;
    const int cond[] = {1};
    ASSERT_EQ(kac_graph_d_separated(dag, 0, 2, cond, 1, &sep), KAC_OK);
    EXPECT_EQ(sep, 1);
    ASSERT_EQ(kac_graph_d_separated(dag, 0, 2, nullptr, 0, &sep), KAC_OK);
    EXPECT_EQ(sep, 0);
    const char* latents[] = {"L"};
    kac_graph* pag = nullptr;
    ASSERT_EQ(kac_graph_true_pag(dag, latents, 1, &pag), KAC_OK);
    EXPECT_EQ(kac_graph_node_count(pag), 2U);
    EXPECT_EQ(kac_graph_edge_count(pag), 1U);
    const char* unknown[] = {"Q"};
    kac_graph* none = nullptr;
    EXPECT_EQ(kac_graph_true_pag(dag, unknown, 1, &none), KAC_ERR_DATA);
    kac_graph_free(pag);
    kac_graph_free(dag);
}

TEST(CApi, LogHandlerReceivesWarnings) {
    Captured got;
    kac_set_log_handler(capture, &got);
    const auto dir = fresh_dir("log");
    std::ofstream(dir / "c.csv") << "x,k\n1,2\n2,2\n3,2\n";
    std::ofstream(dir / "c.schema") << "x,continuous\nk,categorical\n";
    kac_dataset* data = nullptr;
    ASSERT_EQ(kac_dataset_read((dir / "c.csv").string().c_str(), nullptr, &data), KAC_OK);
    kac_corr* corr = nullptr;
    ASSERT_EQ(kac_corr_compute(data, 0.5, 1.0, 1, &corr), KAC_OK);
    kac_set_log_handler(nullptr, nullptr);
    ASSERT_FALSE(got.messages.empty());
    EXPECT_NE(got.messages.front().find("'k'"), std::string::npos);
    double v = -1;
    ASSERT_EQ(kac_corr_get(corr, 0, 1, &v), KAC_OK);
    EXPECT_EQ(v, 0.0);
    kac_corr_free(corr);
    kac_dataset_free(data);
}

TEST(CApi, BenchWritesTables) {
    const auto dir = fresh_dir("bench");
    kac_grid_options g{};
    ASSERT_EQ(kac_grid_options_for_experiment(1, 0, 3, &g), KAC_OK);
    const std::size_t sizes[] = {80};
    g.sample_sizes = sizes;
    g.sample_sizes_len = 1;
    g.graphs_per_size = 1;
    ASSERT_EQ(kac_simulate(&g, (dir / "data").string().c_str(), nullptr), KAC_OK) << kac_last_error();
    const char* presets[] = {"P1", "P3"};
    kac_bench_options b{};
    b.experiment = 1;
    b.presets = presets;
    b.presets_len = 2;
    b.alpha = 0.1;
    b.centering = 1;
    b.stable_skeleton = 1;
    b.max_cond_size = -1;
    b.jobs = 1;
    b.plot_data = 1;
    kac_bench_result result{};
    ASSERT_EQ(kac_bench_run(&b, (dir / "data/manifest.csv").string().c_str(), (dir / "out").string().c_str(), &result),
              KAC_OK)
        << kac_last_error();
    EXPECT_EQ(result.rows, 4U);
    EXPECT_EQ(result.failed, 0U);
    for (const char* f : {"scores.csv", "timings.csv", "summary.csv", "plot_P1_p10.dat"})
        EXPECT_TRUE(std::filesystem::exists(dir / "out" / f)) << f;
    b.experiment = 2;
    EXPECT_EQ(kac_bench_run(&b, (dir / "data/manifest.csv").string().c_str(), (dir / "out").string().c_str(), &result),
              KAC_ERR_DATA);
}
