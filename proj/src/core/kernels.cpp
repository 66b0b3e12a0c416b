#include "kernels.hpp"

#include <cmath>
#include <string>

#include "errors.hpp"

namespace kac {
namespace {

void check_finite(std::span<const double> values) {
    for (double v : values) {
        if (!std::isfinite(v)) throw InputError("non-finite value in kernel input");
    }
}

void check_sigma(double sigma) {
    if (!(sigma > 0.0) || !std::isfinite(sigma)) {
        throw ParamError("RBF width sigma must be positive, got " + std::to_string(sigma));
    }
}

void check_theta(double theta) {
    if (!(theta > 0.0) || !std::isfinite(theta)) {
        throw ParamError("categorical kernel theta must be positive, got " + std::to_string(theta));
    }
}

std::vector<double> level_weights(std::span<const double> values, double theta) {
    const auto freq = empirical_probabilities(values);
    std::map<double, double> weight;
    for (const auto& [level, f] : freq) weight[level] = h_theta(f, theta);
    std::vector<double> out(values.size());
    for (std::size_t a = 0; a < values.size(); ++a) out[a] = weight.at(values[a]);
    return out;
}

}  // namespace

void KernelParams::validate() const {
    check_sigma(sigma);
    check_theta(theta);
}

KernelMatrix rbf_kernel_matrix(std::span<const double> values, double sigma) {
    check_sigma(sigma);
    check_finite(values);
    const auto n = static_cast<Eigen::Index>(values.size());
    const double scale = 1.0 / (2.0 * sigma * sigma);
    KernelMatrix k(n, n);
    for (Eigen::Index a = 0; a < n; ++a) {
        k(a, a) = 1.0;
        for (Eigen::Index b = a + 1; b < n; ++b) {
            const double d = values[static_cast<std::size_t>(a)] - values[static_cast<std::size_t>(b)];
            k(a, b) = k(b, a) = std::exp(-d * d * scale);
        }
    }
    return k;
}

std::map<double, double> empirical_probabilities(std::span<const double> values) {
    std::map<double, double> counts;
    for (double v : values) counts[v] += 1.0;
    const double n = static_cast<double>(values.size());
    for (auto& [level, c] : counts) c /= n;
    return counts;
}

double h_theta(double p, double theta) {
    check_theta(theta);
    if (!(p > 0.0 && p <= 1.0)) throw InputError("h_theta argument must lie in (0, 1], got " + std::to_string(p));
    return std::pow(1.0 - std::pow(p, theta), 1.0 / theta);
}

KernelMatrix categorical_kernel_matrix(std::span<const double> values, double theta) {
    check_theta(theta);
    check_finite(values);
    const auto weights = level_weights(values, theta);
    const auto n = static_cast<Eigen::Index>(values.size());
    KernelMatrix k = KernelMatrix::Zero(n, n);
    for (Eigen::Index a = 0; a < n; ++a) {
        for (Eigen::Index b = 0; b < n; ++b) {
            if (values[static_cast<std::size_t>(a)] == values[static_cast<std::size_t>(b)]) {
                k(a, b) = weights[static_cast<std::size_t>(a)];
            }
        }
    }
    return k;
}

KernelMatrix center_kernel_matrix(const KernelMatrix& k) {
    if (k.rows() != k.cols()) throw InputError("kernel matrix must be square");
    const auto n = k.rows();
    if (n == 0) return k;
    const Eigen::VectorXd row_means = k.rowwise().mean();
    const Eigen::RowVectorXd col_means = k.colwise().mean();
    const double grand = k.mean();
    KernelMatrix out(n, n);
    for (Eigen::Index a = 0; a < n; ++a) {
        for (Eigen::Index b = 0; b < n; ++b) {
            out(a, b) = k(a, b) - row_means(a) - col_means(b) + grand;
        }
    }
    return out;
}

KernelMatrix raw_kernel_for_column(const Column& column, const KernelParams& params) {
    if (column.values.empty()) throw InputError("empty column '" + column.label + "'");
    switch (column.dtype) {
        case DataType::Continuous:
        case DataType::Ordinal: return rbf_kernel_matrix(column.values, params.sigma);
        case DataType::Binary:
        case DataType::Categorical: return categorical_kernel_matrix(column.values, params.theta);
    }
    throw InputError("unknown data type");
}

KernelMatrix kernel_for_column(const Column& column, const KernelParams& params, bool centered) {
    auto k = raw_kernel_for_column(column, params);
    return centered ? center_kernel_matrix(k) : k;
}

KernelRowSource::KernelRowSource(const Column& column, const KernelParams& params, bool centered)
    : rbf_(column.dtype == DataType::Continuous || column.dtype == DataType::Ordinal),
      centered_(centered),
      values_(column.values) {
    if (values_.empty()) throw InputError("empty column '" + column.label + "'");
    check_finite(values_);
    if (rbf_) {
        check_sigma(params.sigma);
        inv_two_sigma_sq_ = 1.0 / (2.0 * params.sigma * params.sigma);
    } else {
        diag_weight_ = level_weights(values_, params.theta);
    }
    const std::size_t n = values_.size();
    row_means_.assign(n, 0.0);
    std::vector<double> buf(n);
    double total = 0.0;
    for (std::size_t a = 0; a < n; ++a) {
        raw_row(a, buf);
        double s = 0.0;
        for (double v : buf) {
            s += v;
            max_abs_raw_ = std::max(max_abs_raw_, std::abs(v));
        }
        row_means_[a] = s / static_cast<double>(n);
        total += s;
    }
    grand_mean_ = total / (static_cast<double>(n) * static_cast<double>(n));
}

void KernelRowSource::raw_row(std::size_t a, std::span<double> out) const {
    const std::size_t n = values_.size();
    const double xa = values_[a];
    if (rbf_) {
        for (std::size_t b = 0; b < n; ++b) {
            const double d = xa - values_[b];
            out[b] = std::exp(-d * d * inv_two_sigma_sq_);
        }
    } else {
        const double w = diag_weight_[a];
        for (std::size_t b = 0; b < n; ++b) out[b] = values_[b] == xa ? w : 0.0;
    }
}

void KernelRowSource::row(std::size_t a, std::span<double> out) const {
    raw_row(a, out);
    if (!centered_) return;
    const double shift = grand_mean_ - row_means_[a];
    const std::size_t n = values_.size();
    for (std::size_t b = 0; b < n; ++b) out[b] = out[b] - row_means_[b] + shift;
}

}  // namespace kac
