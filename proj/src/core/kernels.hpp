#pragma once

#include <map>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "dataset.hpp"

namespace kac {

/// Kernel widths: sigma for the RBF kernel, theta for the categorical kernel.
struct KernelParams {
    double sigma = 0.1;
    double theta = 1.0;

    void validate() const;
};

/// Dense symmetric n x n Gram matrix of one variable.
using KernelMatrix = Eigen::MatrixXd;

/// K[a,b] = exp(-(x_a - x_b)^2 / (2 sigma^2)).
KernelMatrix rbf_kernel_matrix(std::span<const double> values, double sigma);

/// Relative frequency of each level code.
std::map<double, double> empirical_probabilities(std::span<const double> values);

/// (1 - p^theta)^(1/theta) for p in (0, 1].
double h_theta(double p, double theta);

/// K[a,b] = h_theta(freq(z_a)) when z_a == z_b, 0 otherwise.
KernelMatrix categorical_kernel_matrix(std::span<const double> values, double theta);

/// K - JK/n - KJ/n + JKJ/n^2 with J the all-ones matrix.
KernelMatrix center_kernel_matrix(const KernelMatrix& k);

/// Raw (uncentered) kernel matrix for a column: RBF for continuous and ordinal
/// columns, categorical kernel for binary and categorical ones.
KernelMatrix raw_kernel_for_column(const Column& column, const KernelParams& params);

/// raw_kernel_for_column followed by centering (unless `centered` is false).
KernelMatrix kernel_for_column(const Column& column, const KernelParams& params, bool centered = true);

/// Produces rows of one column's kernel matrix on demand, centered or not,
/// without materializing the n x n matrix. Construction costs one pass over
/// the matrix (row means); each row() call costs O(n).
class KernelRowSource {
public:
    KernelRowSource(const Column& column, const KernelParams& params, bool centered);

    std::size_t size() const { return values_.size(); }
    /// Writes row `a` into `out` (length n).
    void row(std::size_t a, std::span<double> out) const;
    /// Largest absolute raw kernel entry (for degeneracy tolerances).
    double max_abs_raw() const { return max_abs_raw_; }

private:
    void raw_row(std::size_t a, std::span<double> out) const;

    bool rbf_;
    bool centered_;
    std::vector<double> values_;
    double inv_two_sigma_sq_ = 0.0;
    std::vector<double> diag_weight_;  // categorical: h_theta(freq(z_a)) per row
    std::vector<double> row_means_;
    double grand_mean_ = 0.0;
    double max_abs_raw_ = 0.0;
};

}  // namespace kac
