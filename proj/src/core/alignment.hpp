#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "dataset.hpp"
#include "kernels.hpp"

namespace kac {

/// p x p matrix of pairwise kernel alignments; symmetric, unit diagonal,
/// entries in [0, 1].
struct PseudoCorrelationMatrix {
    std::vector<std::string> labels;
    Eigen::MatrixXd values;

    std::size_t size() const { return labels.size(); }
};

/// Sum of elementwise products.
double frobenius_inner(const KernelMatrix& k1, const KernelMatrix& k2);

/// <K1,K2> / sqrt(<K1,K1><K2,K2>), clamped to [0, 1]; 0 when either norm is 0.
double alignment(const KernelMatrix& k1, const KernelMatrix& k2);

struct AlignmentOptions {
    bool centering = true;
};

/// Pairwise alignment of every column's kernel matrix.
///
/// Streams kernel rows instead of materializing matrices: one pass per column
/// collects row means, a second pass accumulates all pairwise inner products
/// row by row. Memory is O(p n). The loop order is fixed, so results are
/// reproducible bit for bit.
PseudoCorrelationMatrix pseudo_correlation_matrix(const Dataset& data, const KernelParams& params,
                                                  const AlignmentOptions& options = {});

/// Square CSV with a header row and column of labels, shortest round-trip decimals.
void write_correlation_csv(const PseudoCorrelationMatrix& corr, const std::filesystem::path& path);

}  // namespace kac
