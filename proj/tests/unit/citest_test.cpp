#include <gtest/gtest.h>

#include <boost/math/distributions/normal.hpp>

#include <cmath>

#include "citest.hpp"
#include "errors.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace kac;

TEST(NormalQuantile, StatedValues) {
    EXPECT_NEAR(inverse_normal_cdf(0.5), 0.0, 1e-15);
    EXPECT_NEAR(inverse_normal_cdf(0.95), 1.6449, 1e-3);
    EXPECT_NEAR(inverse_normal_cdf(0.975), 1.9600, 1e-3);
}

TEST(NormalQuantile, AgreesWithBoostAcrossRange) {
    const boost::math::normal_distribution<double> standard;
    for (double q : {1e-12, 1e-8, 1e-4, 0.001, 0.01, 0.02425, 0.1, 0.3, 0.5, 0.7, 0.9, 0.97575, 0.99, 0.999, 1 - 1e-6}) {
        const double expected = boost::math::quantile(standard, q);
        EXPECT_NEAR(inverse_normal_cdf(q), expected, 1e-9 * std::max(1.0, std::abs(expected))) << q;
    }
}

TEST(NormalQuantile, RejectsBoundary) {
    EXPECT_THROW(inverse_normal_cdf(0.0), InputError);
    EXPECT_THROW(inverse_normal_cdf(1.0), InputError);
}

TEST(PartialCorrelation, EmptySetReturnsEntry) {
    Eigen::MatrixXd c(2, 2);
    c << 1.0, 0.3, 0.3, 1.0;
    EXPECT_EQ(partial_correlation(c, 0, 1, {}), 0.3);
}

TEST(PartialCorrelation, UncorrelatedConditioningLeavesEntry) {
    Eigen::MatrixXd c(3, 3);
    c << 1.0, 0.4, 0.0, 0.4, 1.0, 0.0, 0.0, 0.0, 1.0;
    const int s[] = {2};
    EXPECT_NEAR(partial_correlation(c, 0, 1, s), 0.4, 1e-14);
}

TEST(PartialCorrelation, InversionMatchesRecursionOracle) {
    Rng rng(101);
    for (int rep = 0; rep < 300; ++rep) {
        const auto c = testkit::random_correlation(6, rng);
        std::vector<int> nodes{0, 1, 2, 3, 4, 5};
        rng.shuffle(nodes);
        const auto k = rng.index(4);
        std::vector<int> s(nodes.begin() + 2, nodes.begin() + 2 + static_cast<long>(k));
        const double got = partial_correlation(c, nodes[0], nodes[1], s);
        ASSERT_NEAR(got, testkit::recursive_partial_correlation(c, nodes[0], nodes[1], s), 1e-10);
        ASSERT_NEAR(got, partial_correlation(c, nodes[1], nodes[0], s), 1e-12);
    }
}

TEST(PartialCorrelation, SingularSubmatrixCountsAsDependent) {
    Eigen::MatrixXd c = Eigen::MatrixXd::Ones(3, 3);
    const int s[] = {2};
    EXPECT_NEAR(std::abs(partial_correlation(c, 0, 1, s)), 1.0 - 1e-12, 1e-15);
}

TEST(PartialCorrelation, ClampOnlyNearUnitMagnitude) {
    Eigen::MatrixXd c(2, 2);
    c << 1.0, 1.0 - 1e-9, 1.0 - 1e-9, 1.0;
    EXPECT_EQ(partial_correlation(c, 0, 1, {}), 1.0 - 1e-9);
    c(0, 1) = c(1, 0) = 1.0;
    EXPECT_EQ(partial_correlation(c, 0, 1, {}), 1.0 - 1e-12);
}

TEST(PartialCorrelation, RejectsBadIndices) {
    const Eigen::MatrixXd c = Eigen::MatrixXd::Identity(3, 3);
    const int self[] = {0};
    EXPECT_THROW(partial_correlation(c, 0, 0, {}), InputError);
    EXPECT_THROW(partial_correlation(c, 0, 3, {}), InputError);
    EXPECT_THROW(partial_correlation(c, 0, 1, self), InputError);
}

TEST(FisherZ, ZeroCorrelationIsIndependent) {
    const CiContext ctx(Eigen::MatrixXd::Identity(2, 2), 50, 0.5);
    const auto d = fisher_z_ci_test(ctx, 0, 1, {});
    EXPECT_TRUE(d.independent);
    EXPECT_EQ(d.statistic, 0.0);
}

TEST(FisherZ, StatedExamples) {
    Eigen::MatrixXd c(2, 2);
    c << 1.0, 0.2, 0.2, 1.0;
    const auto big = fisher_z_ci_test(CiContext(c, 100, 0.1), 0, 1, {});
    EXPECT_NEAR(big.statistic, std::sqrt(97.0) * std::atanh(0.2), 1e-12);
    EXPECT_NEAR(big.statistic, 1.9967, 1e-4);
    EXPECT_NEAR(big.threshold, 1.6449, 1e-4);
    EXPECT_FALSE(big.independent);
    const auto small = fisher_z_ci_test(CiContext(c, 10, 0.1), 0, 1, {});
    EXPECT_NEAR(small.statistic, 0.5364, 1e-4);
    EXPECT_TRUE(small.independent);
}

TEST(FisherZ, TooFewSamplesReportsIndependence) {
    Eigen::MatrixXd c(3, 3);
    c << 1.0, 0.9, 0.5, 0.9, 1.0, 0.5, 0.5, 0.5, 1.0;
    const int s[] = {2};
    EXPECT_TRUE(fisher_z_ci_test(CiContext(c, 4, 0.1), 0, 1, s).independent);
}

TEST(FisherZ, DecisionMonotoneInAlpha) {
    Rng rng(17);
    for (int rep = 0; rep < 200; ++rep) {
        const auto c = testkit::random_correlation(4, rng);
        const int s[] = {2};
        const auto n = 10 + rng.index(200);
        const double a1 = rng.uniform(0.01, 0.5), a2 = a1 * rng.uniform(0.1, 0.99);
        if (fisher_z_ci_test(CiContext(c, n, a1), 0, 1, s).independent)
            ASSERT_TRUE(fisher_z_ci_test(CiContext(c, n, a2), 0, 1, s).independent);
    }
}

TEST(FisherZ, RejectsBadParameters) {
    EXPECT_THROW(CiContext(Eigen::MatrixXd::Identity(2, 2), 10, 0.0), ParamError);
    EXPECT_THROW(CiContext(Eigen::MatrixXd::Identity(2, 2), 10, 1.0), ParamError);
    EXPECT_THROW(CiContext(Eigen::MatrixXd::Identity(2, 2), 0, 0.1), ParamError);
}

TEST(OracleTest, ChainAndCollider) {
    MixedGraph chain(GraphKind::Dag, {"A", "B", "C"});
    chain.add_directed(0, 1);
    chain.add_directed(1, 2);
    MixedGraph collider(GraphKind::Dag, {"A", "B", "C"});
    collider.add_directed(0, 1);
    collider.add_directed(2, 1);
    const int s[] = {1};
    EXPECT_TRUE(oracle_ci_test(chain)(0, 2, s));
    EXPECT_FALSE(oracle_ci_test(collider)(0, 2, s));
}

TEST(OracleTest, MapsObservedIndices) {
    MixedGraph g(GraphKind::Dag, {"A", "L", "B", "C"});
    g.add_directed(1, 0);
    g.add_directed(1, 2);
    g.add_directed(2, 3);
    const auto test = oracle_ci_test(g, {0, 2, 3});
    EXPECT_FALSE(test(0, 1, {}));
    const int s[] = {1};
    EXPECT_TRUE(test(0, 2, s));
}

TEST(OracleTest, MatchesDSeparation) {
    Rng rng(23);
    for (int rep = 0; rep < 30; ++rep) {
        const auto g = testkit::random_dag_with_prob(6, 0.4, rng);
        const auto test = oracle_ci_test(g);
        for (int i = 0; i < 6; ++i)
            for (int j = i + 1; j < 6; ++j) {
                std::vector<int> s;
                for (int v = 0; v < 6; ++v)
                    if (v != i && v != j && rng.bernoulli(0.5)) s.push_back(v);
                ASSERT_EQ(test(i, j, s), d_separated(g, i, j, s));
            }
    }
}
