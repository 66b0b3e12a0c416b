#include "alignment.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <memory>

#include "errors.hpp"
#include "log.hpp"
#include "text_util.hpp"

namespace kac {
namespace {

void check_same_shape(const KernelMatrix& k1, const KernelMatrix& k2) {
    if (k1.rows() != k2.rows() || k1.cols() != k2.cols()) {
        throw InputError("kernel matrix dimensions differ");
    }
}

double cosine(double cross, double self1, double self2) {
    if (self1 <= 0.0 || self2 <= 0.0) return 0.0;
    return std::clamp(cross / std::sqrt(self1 * self2), 0.0, 1.0);
}

}  // namespace

double frobenius_inner(const KernelMatrix& k1, const KernelMatrix& k2) {
    check_same_shape(k1, k2);
    double total = 0.0;
    for (Eigen::Index a = 0; a < k1.rows(); ++a) {
        double row = 0.0;
        for (Eigen::Index b = 0; b < k1.cols(); ++b) row += k1(a, b) * k2(a, b);
        total += row;
    }
    return total;
}

double alignment(const KernelMatrix& k1, const KernelMatrix& k2) {
    check_same_shape(k1, k2);
    return cosine(frobenius_inner(k1, k2), frobenius_inner(k1, k1), frobenius_inner(k2, k2));
}

PseudoCorrelationMatrix pseudo_correlation_matrix(const Dataset& data, const KernelParams& params,
                                                  const AlignmentOptions& options) {
    params.validate();
    const std::size_t p = data.cols();
    const std::size_t n = data.rows();
    if (p < 2) throw InputError("pseudo-correlation needs at least two variables");

    std::vector<std::unique_ptr<KernelRowSource>> sources;
    sources.reserve(p);
    for (const auto& col : data.columns()) {
        sources.push_back(std::make_unique<KernelRowSource>(col, params, options.centering));
    }

    // Gram matrix of the vectorized kernels, accumulated one kernel row at a time.
    Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(p));
    std::vector<double> rows(p * n);
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t c = 0; c < p; ++c) sources[c]->row(a, std::span<double>(rows.data() + c * n, n));
        for (std::size_t i = 0; i < p; ++i) {
            const double* ri = rows.data() + i * n;
            for (std::size_t j = i; j < p; ++j) {
                const double* rj = rows.data() + j * n;
                double s = 0.0;
                for (std::size_t b = 0; b < n; ++b) s += ri[b] * rj[b];
                gram(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) += s;
            }
        }
    }

    std::vector<bool> degenerate(p, false);
    for (std::size_t c = 0; c < p; ++c) {
        const auto ci = static_cast<Eigen::Index>(c);
        const double tol = 1e-12 * static_cast<double>(n) * sources[c]->max_abs_raw();
        if (std::sqrt(std::max(gram(ci, ci), 0.0)) <= tol) {
            degenerate[c] = true;
            log::warn("kernel matrix of column '" + data.column(c).label +
                      "' is zero after centering; its alignments are set to 0");
        }
    }

    PseudoCorrelationMatrix out;
    out.labels = data.labels();
    out.values = Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(p));
    for (std::size_t i = 0; i < p; ++i) {
        for (std::size_t j = i + 1; j < p; ++j) {
            const auto ii = static_cast<Eigen::Index>(i);
            const auto jj = static_cast<Eigen::Index>(j);
            const double a = (degenerate[i] || degenerate[j]) ? 0.0 : cosine(gram(ii, jj), gram(ii, ii), gram(jj, jj));
            out.values(ii, jj) = out.values(jj, ii) = a;
        }
    }
    return out;
}

void write_correlation_csv(const PseudoCorrelationMatrix& corr, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    for (const auto& l : corr.labels) out << ',' << l;
    out << '\n';
    for (std::size_t i = 0; i < corr.size(); ++i) {
        out << corr.labels[i];
        for (std::size_t j = 0; j < corr.size(); ++j) {
            out << ',' << format_double(corr.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)));
        }
        out << '\n';
    }
    if (!out) throw IoError("write failed: " + path.string());
}

}  // namespace kac
