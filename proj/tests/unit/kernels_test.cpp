#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>

#include <cmath>

#include "errors.hpp"
#include "kernels.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace kac;

namespace {

double min_eigenvalue(const Eigen::MatrixXd& m) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

std::vector<double> random_values(Rng& rng, std::size_t n, DataType t) {
    std::vector<double> v(n);
    for (auto& x : v) {
        if (t == DataType::Continuous)
            x = rng.normal() * 0.2;
        else
            x = static_cast<double>(rng.index(t == DataType::Binary ? 2 : 4));
    }
    return v;
}

}  // namespace

TEST(RbfKernel, ConstantValuesGiveOnes) {
    const std::vector<double> v{2.5, 2.5, 2.5};
    EXPECT_TRUE(rbf_kernel_matrix(v, 0.1).isApproxToConstant(1.0));
}

TEST(RbfKernel, OneBandwidthApart) {
    const std::vector<double> v{0.0, 0.1};
    const auto k = rbf_kernel_matrix(v, 0.1);
    EXPECT_NEAR(k(0, 1), std::exp(-0.5), 1e-12);
    EXPECT_NEAR(k(0, 1), 0.606531, 1e-6);
    EXPECT_EQ(k(0, 0), 1.0);
    EXPECT_EQ(k(1, 1), 1.0);
}

TEST(RbfKernel, DecreasingInDistanceAndTranslationInvariant) {
    const std::vector<double> v{0.0, 0.05, 0.1, 0.3};
    const auto k = rbf_kernel_matrix(v, 0.1);
    EXPECT_GT(k(0, 1), k(0, 2));
    EXPECT_GT(k(0, 2), k(0, 3));
    std::vector<double> shifted = v;
    for (auto& x : shifted) x += 17.25;
    EXPECT_TRUE(rbf_kernel_matrix(shifted, 0.1).isApprox(k, 1e-12));
}

TEST(RbfKernel, RejectsBadBandwidth) {
    const std::vector<double> v{0.0, 1.0};
    EXPECT_THROW(rbf_kernel_matrix(v, 0.0), ParamError);
    EXPECT_THROW(rbf_kernel_matrix(v, -1.0), ParamError);
}

TEST(EmpiricalProbabilities, Frequencies) {
    const std::vector<double> half{1, 1, 2, 2}, skew{1, 1, 1, 2}, single{4};
    EXPECT_EQ(empirical_probabilities(half), (std::map<double, double>{{1, 0.5}, {2, 0.5}}));
    EXPECT_EQ(empirical_probabilities(skew), (std::map<double, double>{{1, 0.75}, {2, 0.25}}));
    EXPECT_EQ(empirical_probabilities(single), (std::map<double, double>{{4, 1.0}}));
}

TEST(HTheta, StatedValues) {
    EXPECT_EQ(h_theta(1.0, 0.5), 0.0);
    EXPECT_EQ(h_theta(1.0, 1.5), 0.0);
    EXPECT_NEAR(h_theta(0.5, 1.0), 0.5, 1e-15);
    EXPECT_NEAR(h_theta(0.5, 0.5), 0.085786, 1e-6);
    EXPECT_NEAR(h_theta(0.5, 0.5), std::pow(1.0 - std::sqrt(0.5), 2.0), 1e-15);
}

TEST(HTheta, RejectsOutOfDomain) {
    EXPECT_THROW(h_theta(0.5, 0.0), ParamError);
    EXPECT_THROW(h_theta(0.0, 1.0), InputError);
    EXPECT_THROW(h_theta(1.5, 1.0), InputError);
}

TEST(CategoricalKernel, TwoBalancedLevels) {
    const std::vector<double> v{0, 1};
    const auto k = categorical_kernel_matrix(v, 1.0);
    Eigen::MatrixXd expected(2, 2);
    expected << 0.5, 0.0, 0.0, 0.5;
    EXPECT_TRUE(k.isApprox(expected, 1e-15));
}

TEST(CategoricalKernel, UnequalLevelsAreZeroAndSingleLevelVanishes) {
    const std::vector<double> distinct{0, 1, 2, 3};
    const auto k = categorical_kernel_matrix(distinct, 0.5);
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            if (a != b) EXPECT_EQ(k(a, b), 0.0);
    const std::vector<double> same{2, 2, 2};
    EXPECT_TRUE(categorical_kernel_matrix(same, 1.0).isZero(0.0));
}

TEST(CategoricalKernel, RelabelingPermutesConsistently) {
    const std::vector<double> v{0, 1, 1, 2, 0, 2, 2};
    std::vector<double> relabeled;
    for (double x : v) relabeled.push_back(x == 0 ? 7 : (x == 1 ? 3 : 5));
    EXPECT_TRUE(categorical_kernel_matrix(v, 1.5).isApprox(categorical_kernel_matrix(relabeled, 1.5), 0.0));
}

TEST(KernelMatrices, EntriesInUnitIntervalSymmetricPsd) {
    Rng rng(41);
    for (DataType t : {DataType::Continuous, DataType::Ordinal, DataType::Binary, DataType::Categorical}) {
        for (int rep = 0; rep < 100; ++rep) {
            const auto n = 5 + rng.index(30);
            Column col{"c", t, random_values(rng, n, t)};
            const auto k = raw_kernel_for_column(col, {rng.uniform(0.01, 1.0), rng.uniform(0.5, 1.5)});
            ASSERT_GE(k.minCoeff(), 0.0);
            ASSERT_LE(k.maxCoeff(), 1.0);
            ASSERT_TRUE(k.isApprox(k.transpose(), 0.0));
            ASSERT_GE(min_eigenvalue(k), -1e-8);
        }
    }
}

TEST(Centering, OnesMatrixVanishes) {
    EXPECT_TRUE(center_kernel_matrix(Eigen::MatrixXd::Ones(5, 5)).isZero(1e-14));
}

TEST(Centering, MatchesProjectionOracleAndIsIdempotent) {
    Rng rng(8);
    for (int rep = 0; rep < 50; ++rep) {
        Eigen::MatrixXd x(4, 3);
        for (int r = 0; r < 4; ++r)
            for (int c = 0; c < 3; ++c) x(r, c) = rng.normal();
        const Eigen::MatrixXd k = x * x.transpose();
        const auto kc = center_kernel_matrix(k);
        EXPECT_TRUE(kc.isApprox(testkit::naive_center(k), 1e-12));
        EXPECT_LT(kc.rowwise().sum().cwiseAbs().maxCoeff(), 1e-12);
        EXPECT_LT(kc.colwise().sum().cwiseAbs().maxCoeff(), 1e-12);
        EXPECT_GE(min_eigenvalue(kc), -1e-9);
        EXPECT_LT((center_kernel_matrix(kc) - kc).cwiseAbs().maxCoeff(), 1e-12);
    }
}

TEST(KernelForColumn, ConstantContinuousColumnCentersToZero) {
    Column col{"c", DataType::Continuous, {0.0, 0.0}};
    EXPECT_TRUE(kernel_for_column(col, {0.001, 1.0}).isZero(1e-15));
}

TEST(KernelForColumn, BinaryComposesCategoricalAndCentering) {
    Column col{"b", DataType::Binary, {0, 1, 0, 1}};
    const double h = std::pow(1.0 - std::pow(0.5, 0.5), 2.0);
    Eigen::MatrixXd block(4, 4);
    block << h, 0, h, 0, 0, h, 0, h, h, 0, h, 0, 0, h, 0, h;
    EXPECT_TRUE(kernel_for_column(col, {0.1, 0.5}).isApprox(testkit::naive_center(block), 1e-12));
}

TEST(KernelForColumn, OrdinalUsesRbfOnCodes) {
    Column col{"o", DataType::Ordinal, {1, 2, 3, 4}};
    const auto expected = center_kernel_matrix(rbf_kernel_matrix(col.values, 0.5));
    EXPECT_TRUE(kernel_for_column(col, {0.5, 1.0}).isApprox(expected, 1e-14));
    EXPECT_TRUE(kernel_for_column(col, {0.5, 1.0}, false).isApprox(rbf_kernel_matrix(col.values, 0.5), 1e-14));
}

TEST(KernelRowSource, RowsMatchMaterializedMatrix) {
    Rng rng(13);
    for (DataType t : {DataType::Continuous, DataType::Ordinal, DataType::Binary, DataType::Categorical}) {
        Column col{"c", t, random_values(rng, 23, t)};
        for (bool centered : {true, false}) {
            const KernelParams params{0.3, 0.7};
            const auto k = kernel_for_column(col, params, centered);
            KernelRowSource src(col, params, centered);
            std::vector<double> row(23);
            for (std::size_t a = 0; a < 23; ++a) {
                src.row(a, row);
                for (std::size_t b = 0; b < 23; ++b)
                    ASSERT_NEAR(row[b], k(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)), 1e-13);
            }
        }
    }
}
