#pragma once

#include <Eigen/Dense>

#include <filesystem>
#include <fstream>
#include <iterator>
#include <string>
#include <vector>

#include "dataset.hpp"
#include "graph.hpp"
#include "rng.hpp"

namespace kac::testkit {

// Random DAG over a shuffled order, every forward pair included with probability prob.
inline MixedGraph random_dag_with_prob(int p, double prob, Rng& rng) {
    std::vector<int> order(static_cast<std::size_t>(p));
    for (int v = 0; v < p; ++v) order[static_cast<std::size_t>(v)] = v;
    rng.shuffle(order);
    auto g = MixedGraph::with_default_labels(GraphKind::Dag, p);
    for (int a = 0; a < p; ++a)
        for (int b = a + 1; b < p; ++b)
            if (rng.bernoulli(prob)) g.add_directed(order[static_cast<std::size_t>(a)], order[static_cast<std::size_t>(b)]);
    return g;
}

// Random positive definite correlation matrix: normalized Gram matrix of random vectors.
inline Eigen::MatrixXd random_correlation(int p, Rng& rng) {
    Eigen::MatrixXd x(p, p + 3);
    for (int r = 0; r < x.rows(); ++r)
        for (int c = 0; c < x.cols(); ++c) x(r, c) = rng.normal();
    Eigen::MatrixXd g = x * x.transpose();
    const Eigen::VectorXd d = g.diagonal().cwiseSqrt().cwiseInverse();
    Eigen::MatrixXd c = d.asDiagonal() * g * d.asDiagonal();
    c.diagonal().setOnes();
    return c;
}

// Mixed dataset with independent columns of the given types.
inline Dataset random_mixed_dataset(const std::vector<DataType>& types, std::size_t n, Rng& rng) {
    std::vector<Column> cols;
    for (std::size_t c = 0; c < types.size(); ++c) {
        Column col{"V" + std::to_string(c + 1), types[c], {}};
        col.values.resize(n);
        for (auto& v : col.values) {
            switch (types[c]) {
                case DataType::Continuous: v = rng.normal() * 2.0; break;
                case DataType::Binary: v = static_cast<double>(rng.index(2)); break;
                case DataType::Ordinal: v = static_cast<double>(rng.index(5)); break;
                case DataType::Categorical: v = static_cast<double>(rng.index(3)); break;
            }
        }
        cols.push_back(std::move(col));
    }
    return Dataset(std::move(cols));
}

// Linear Gaussian sample from `dag` with edge weights of magnitude in [0.5, 1.5].
inline Dataset linear_gaussian_sample(const MixedGraph& dag, std::size_t n, Rng& rng) {
    const int p = dag.size();
    std::vector<std::vector<double>> w(static_cast<std::size_t>(p), std::vector<double>(static_cast<std::size_t>(p), 0.0));
    for (int a = 0; a < p; ++a)
        for (int b : dag.children(a)) w[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = rng.signed_uniform(0.5, 1.5);
    std::vector<Column> cols(static_cast<std::size_t>(p));
    for (int v = 0; v < p; ++v) cols[static_cast<std::size_t>(v)] = {dag.label(v), DataType::Continuous, std::vector<double>(n)};
    for (int v : topological_order(dag)) {
        auto& out = cols[static_cast<std::size_t>(v)].values;
        for (std::size_t r = 0; r < n; ++r) {
            double x = rng.normal();
            for (int u : dag.parents(v)) x += w[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] * cols[static_cast<std::size_t>(u)].values[r];
            out[r] = x;
        }
    }
    return Dataset(std::move(cols));
}

inline Eigen::MatrixXd pearson(const Dataset& d) {
    const auto p = static_cast<Eigen::Index>(d.cols());
    const auto n = static_cast<Eigen::Index>(d.rows());
    Eigen::MatrixXd x(n, p);
    for (Eigen::Index c = 0; c < p; ++c)
        for (Eigen::Index r = 0; r < n; ++r) x(r, c) = d.column(static_cast<std::size_t>(c)).values[static_cast<std::size_t>(r)];
    const Eigen::MatrixXd centered = x.rowwise() - x.colwise().mean();
    Eigen::MatrixXd cov = centered.transpose() * centered;
    const Eigen::VectorXd inv_sd = cov.diagonal().cwiseSqrt().cwiseInverse();
    Eigen::MatrixXd c = inv_sd.asDiagonal() * cov * inv_sd.asDiagonal();
    c.diagonal().setOnes();
    return c;
}

inline std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline std::filesystem::path fresh_dir(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / ("kacausal_test_" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

}  // namespace kac::testkit
