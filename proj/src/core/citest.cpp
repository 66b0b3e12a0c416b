#include "citest.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <sstream>
#include <string>

#include "errors.hpp"
#include "log.hpp"

namespace kac {
namespace {

constexpr double kRhoBound = 1.0 - 1e-12;
constexpr double kRidge = 1e-10;
// Smallest conditional variance accepted as a Cholesky pivot; ten ridges, so a
// matrix that only the ridge makes definite still counts as singular.
constexpr double kPivotFloor = 1e-9;

// Acklam's coefficients.
constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02, -2.759285104469687e+02,
                        1.383577518672690e+02,  -3.066479806614716e+01, 2.506628277459239e+00};
constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02, -1.556989798598866e+02,
                        6.680131188771972e+01,  -1.328068155288572e+01};
constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01, -2.400758277161838e+00,
                        -2.549732539343734e+00, 4.374664141464968e+00,  2.938163982698783e+00};
constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01, 2.445134137142996e+00,
                        3.754408661907416e+00};

// Solves (sub) x = e_k via Cholesky; false when a pivot is not clearly positive.
bool invert_leading(const Eigen::MatrixXd& sub, Eigen::MatrixXd& inverse) {
    Eigen::LLT<Eigen::MatrixXd> llt(sub);
    if (llt.info() != Eigen::Success) return false;
    const Eigen::VectorXd diag = llt.matrixLLT().diagonal();
    for (Eigen::Index k = 0; k < diag.size(); ++k) {
        if (!(diag(k) * diag(k) > kPivotFloor)) return false;
    }
    Eigen::MatrixXd rhs = Eigen::MatrixXd::Identity(sub.rows(), 2);
    inverse = llt.solve(rhs);
    return inverse.allFinite();
}

}  // namespace

double inverse_normal_cdf(double q) {
    if (!(q > 0.0 && q < 1.0)) throw InputError("normal quantile argument must lie in (0, 1)");
    constexpr double low = 0.02425;
    double x = 0.0;
    if (q < low) {
        const double t = std::sqrt(-2.0 * std::log(q));
        x = (((((c[0] * t + c[1]) * t + c[2]) * t + c[3]) * t + c[4]) * t + c[5]) /
            ((((d[0] * t + d[1]) * t + d[2]) * t + d[3]) * t + 1.0);
    } else if (q <= 1.0 - low) {
        const double t = q - 0.5;
        const double r = t * t;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * t /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    } else {
        const double t = std::sqrt(-2.0 * std::log1p(-q));
        x = -(((((c[0] * t + c[1]) * t + c[2]) * t + c[3]) * t + c[4]) * t + c[5]) /
            ((((d[0] * t + d[1]) * t + d[2]) * t + d[3]) * t + 1.0);
    }
    // Halley refinement against the erfc-based CDF.
    const double err = 0.5 * std::erfc(-x / std::sqrt(2.0)) - q;
    const double u = err * std::sqrt(2.0 * M_PI) * std::exp(x * x / 2.0);
    return x - u / (1.0 + x * u / 2.0);
}

double partial_correlation(const Eigen::MatrixXd& corr, int i, int j, std::span<const int> conditioning) {
    const auto p = static_cast<int>(corr.rows());
    if (corr.cols() != corr.rows()) throw InputError("correlation matrix must be square");
    if (i < 0 || j < 0 || i >= p || j >= p) throw InputError("partial correlation index out of range");
    if (i == j) throw InputError("partial correlation of a variable with itself");
    for (int s : conditioning) {
        if (s < 0 || s >= p) throw InputError("conditioning index out of range");
        if (s == i || s == j) throw InputError("conditioning set contains a query variable");
    }
    if (conditioning.empty()) return std::clamp(corr(i, j), -kRhoBound, kRhoBound);

    const auto m = static_cast<Eigen::Index>(conditioning.size() + 2);
    std::vector<int> idx{i, j};
    idx.insert(idx.end(), conditioning.begin(), conditioning.end());
    Eigen::MatrixXd sub(m, m);
    for (Eigen::Index r = 0; r < m; ++r) {
        for (Eigen::Index s = 0; s < m; ++s) sub(r, s) = corr(idx[static_cast<std::size_t>(r)], idx[static_cast<std::size_t>(s)]);
    }
    Eigen::MatrixXd inv;
    if (!invert_leading(sub, inv)) {
        sub.diagonal().array() += kRidge;
        if (!invert_leading(sub, inv)) return kRhoBound;
    }
    const double denom = std::sqrt(inv(0, 0) * inv(1, 1));
    if (!(denom > 0.0) || !std::isfinite(denom)) return kRhoBound;
    const double rho = -inv(0, 1) / denom;
    if (!std::isfinite(rho)) return kRhoBound;
    return std::clamp(rho, -kRhoBound, kRhoBound);
}

CiContext::CiContext(Eigen::MatrixXd corr, std::size_t n, double alpha)
    : corr_(std::move(corr)), n_(n), alpha_(alpha) {
    if (n_ < 1) throw ParamError("sample size must be at least 1");
    if (!(alpha_ > 0.0 && alpha_ < 1.0)) throw ParamError("alpha must lie in (0, 1)");
    if (corr_.rows() != corr_.cols()) throw InputError("correlation matrix must be square");
    threshold_ = inverse_normal_cdf(1.0 - alpha_ / 2.0);
}

CiDecision fisher_z_ci_test(const CiContext& ctx, int u, int v, std::span<const int> conditioning) {
    CiDecision out;
    out.threshold = ctx.threshold();
    out.rho = partial_correlation(ctx.corr(), u, v, conditioning);
    const double dof = static_cast<double>(ctx.n()) - static_cast<double>(conditioning.size()) - 3.0;
    if (dof < 1.0) {
        log::warn("Fisher-z test with n - |S| - 3 < 1 has no power; reporting independence");
        out.independent = true;
        return out;
    }
    const double z = 0.5 * std::log((1.0 + out.rho) / (1.0 - out.rho));
    out.statistic = std::sqrt(dof) * std::abs(z);
    out.independent = out.statistic <= out.threshold;
    return out;
}

IndependenceTest make_fisher_z_test(std::shared_ptr<const CiContext> ctx, std::vector<std::string> labels,
                                    bool verbose) {
    return [ctx = std::move(ctx), labels = std::move(labels), verbose](int u, int v, std::span<const int> s) {
        const CiDecision d = fisher_z_ci_test(*ctx, u, v, s);
        if (verbose && log::enabled(log::Level::Debug)) {
            auto name = [&](int k) {
                return k < static_cast<int>(labels.size()) ? labels[static_cast<std::size_t>(k)] : std::to_string(k);
            };
            std::ostringstream line;
            line << name(u) << " _||_ " << name(v) << " | {";
            for (std::size_t k = 0; k < s.size(); ++k) line << (k ? "," : "") << name(s[k]);
            line << "} : " << d.rho << ", " << d.statistic << ", " << (d.independent ? "independent" : "dependent");
            log::debug(line.str());
        }
        return d.independent;
    };
}

IndependenceTest oracle_ci_test(const MixedGraph& dag, std::vector<int> observed) {
    if (dag.kind() != GraphKind::Dag) throw InputError("oracle test needs a DAG");
    dag.validate();
    if (observed.empty()) {
        for (int v = 0; v < dag.size(); ++v) observed.push_back(v);
    }
    return [dag, observed = std::move(observed)](int u, int v, std::span<const int> s) {
        std::vector<int> mapped;
        mapped.reserve(s.size());
        for (int k : s) mapped.push_back(observed.at(static_cast<std::size_t>(k)));
        return d_separated(dag, observed.at(static_cast<std::size_t>(u)), observed.at(static_cast<std::size_t>(v)),
                           mapped);
    };
}

}  // namespace kac
