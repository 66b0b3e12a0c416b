#include <gtest/gtest.h>

#include "errors.hpp"
#include "graph_io.hpp"
#include "support.hpp"

using namespace kac;

TEST(GraphIo, ParsesAllMarkKinds) {
    const auto g = parse_graph(
        "#kind: pag\n#nodes: X1,X2,X3,X4,X5,X6\nX1 -> X2\nX3 o> X4\nX5 -- X6\nX2 <> X3\nX1 oo X6\n");
    EXPECT_EQ(g.kind(), GraphKind::Pag);
    EXPECT_TRUE(g.is_directed(0, 1));
    EXPECT_EQ(g.mark_at(3, 2), Mark::Circle);
    EXPECT_EQ(g.mark_at(2, 3), Mark::Arrow);
    EXPECT_TRUE(g.is_undirected(4, 5));
    EXPECT_EQ(g.mark_at(1, 2), Mark::Arrow);
    EXPECT_EQ(g.mark_at(2, 1), Mark::Arrow);
    EXPECT_EQ(g.mark_at(0, 5), Mark::Circle);
}

TEST(GraphIo, LeftArrowIsReversed) {
    const auto g = parse_graph("#kind: dag\n#nodes: A,B\nA <- B\n");
    EXPECT_TRUE(g.is_directed(1, 0));
}

TEST(GraphIo, RoundTripsRandomGraphs) {
    kac::Rng rng(3);
    const Mark marks[] = {Mark::Tail, Mark::Arrow, Mark::Circle};
    for (int rep = 0; rep < 50; ++rep) {
        auto g = MixedGraph::with_default_labels(GraphKind::Pag, 6);
        for (int a = 0; a < 6; ++a)
            for (int b = a + 1; b < 6; ++b)
                if (rng.bernoulli(0.4)) g.add_edge(a, b, marks[rng.index(3)], marks[rng.index(3)]);
        EXPECT_EQ(parse_graph(format_graph(g)), g);
    }
    const auto dag = testkit::random_dag_with_prob(8, 0.3, rng);
    EXPECT_EQ(parse_graph(format_graph(dag)), dag);
}

TEST(GraphIo, ReportsMalformedInput) {
    EXPECT_THROW(parse_graph("#nodes: A,B\nA -> B\n"), FormatError);
    EXPECT_THROW(parse_graph("#kind: dag\n#nodes: A,B\nA => B\n"), FormatError);
    EXPECT_THROW(parse_graph("#kind: dag\n#nodes: A,B\nA -> C\n"), FormatError);
    EXPECT_THROW(parse_graph("#kind: tree\n#nodes: A,B\n"), FormatError);
    EXPECT_THROW(parse_graph("#kind: dag\n#nodes: A,B\nA -> B\nB -> A\n"), FormatError);
}

TEST(GraphIo, RejectsInvalidKindContents) {
    EXPECT_ANY_THROW(parse_graph("#kind: cpdag\n#nodes: A,B\nA o> B\n"));
    EXPECT_ANY_THROW(parse_graph("#kind: dag\n#nodes: A,B,C\nA -> B\nB -> C\nC -> A\n"));
}

TEST(GraphIo, FileRoundTrip) {
    const auto dir = testkit::fresh_dir("graph_io");
    MixedGraph g(GraphKind::Cpdag, {"a", "b", "c"});
    g.add_directed(0, 1);
    g.add_undirected(1, 2);
    write_graph_file(g, dir / "g.txt");
    EXPECT_EQ(read_graph_file(dir / "g.txt"), g);
    EXPECT_THROW(read_graph_file(dir / "missing.txt"), IoError);
}
