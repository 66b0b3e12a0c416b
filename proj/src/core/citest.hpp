#pragma once

#include <functional>
#include <memory>
#include <string>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "graph.hpp"

namespace kac {

/// Conditional-independence query u _||_ v | S. Returns true for "independent".
using IndependenceTest = std::function<bool(int u, int v, std::span<const int> conditioning)>;

/// Quantile of the standard normal distribution. Rational approximation
/// refined by one Halley step; |Phi(x) - q| <= 1e-8 over (0, 1).
double inverse_normal_cdf(double q);

/// Partial correlation of i and j given S from a correlation-like matrix, read
/// off the inverse of the (|S|+2)-square submatrix over {i, j} + S.
///
/// A singular submatrix gets a 1e-10 ridge and one retry; if that also fails
/// the pair is reported as maximally dependent (1 - 1e-12). The result is
/// clamped to [-1 + 1e-12, 1 - 1e-12].
double partial_correlation(const Eigen::MatrixXd& corr, int i, int j, std::span<const int> conditioning);

struct CiDecision {
    bool independent = true;
    double statistic = 0.0;  // sqrt(n - |S| - 3) * |z|
    double threshold = 0.0;  // Phi^-1(1 - alpha/2)
    double rho = 0.0;
};

/// Correlation matrix plus sample size and significance level.
class CiContext {
public:
    CiContext(Eigen::MatrixXd corr, std::size_t n, double alpha);

    const Eigen::MatrixXd& corr() const { return corr_; }
    std::size_t n() const { return n_; }
    double alpha() const { return alpha_; }
    double threshold() const { return threshold_; }

private:
    Eigen::MatrixXd corr_;
    std::size_t n_;
    double alpha_;
    double threshold_;
};

/// Fisher-z test: independent iff sqrt(n - |S| - 3) |atanh(rho)| <= Phi^-1(1 - alpha/2).
/// With n - |S| - 3 < 1 the test has no power and reports independence.
CiDecision fisher_z_ci_test(const CiContext& ctx, int u, int v, std::span<const int> conditioning);

/// Wraps fisher_z_ci_test as an IndependenceTest. With `verbose`, every query
/// is logged at debug level as `u _||_ v | S : rho, stat, decision`.
IndependenceTest make_fisher_z_test(std::shared_ptr<const CiContext> ctx, std::vector<std::string> labels = {},
                                    bool verbose = false);

/// Independence oracle answering by d-separation in `dag`. Query indices refer
/// to `observed` (dag node ids); an empty `observed` means all nodes.
IndependenceTest oracle_ci_test(const MixedGraph& dag, std::vector<int> observed = {});

}  // namespace kac
