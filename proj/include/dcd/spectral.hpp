#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <cstdint>
#include <optional>

#include "dcd/graph.hpp"

namespace dcd {

struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SingularTriple {
    Eigen::MatrixXd U;      // n x K, orthonormal columns
    Eigen::MatrixXd V;      // n x K
    Eigen::VectorXd sigma;  // K, descending
    bool degenerate_gap = false;  // sigma_K close to sigma_{K+1}
    bool rank_deficient = false;  // K exceeded the numerical rank
};

struct SvdOptions {
    double tol = 1e-10;
    int max_iter = 300;
    int oversampling = 4;
    std::uint64_t seed = 0;
    // Dense SVD below this size; subspace iteration on A^T A / A A^T above.
    NodeId dense_limit = 256;
};

SingularTriple top_k_svd(const Eigen::SparseMatrix<double>& m, int K,
                         const SvdOptions& opts = {});
SingularTriple top_k_svd(const Eigen::MatrixXd& m, int K,
                         const SvdOptions& opts = {});

struct LaplacianConfig {
    // absent -> average degree |edges| / n
    std::optional<double> tau;
};

// L(i,j) = A(i,j) / sqrt((tau + d_out(i)) * (tau + d_in(j)))
Eigen::SparseMatrix<double> regularized_laplacian(
    const DirectedGraph& g, const LaplacianConfig& cfg = {});

Eigen::SparseMatrix<double> adjacency_matrix(const DirectedGraph& g);

}  // namespace dcd
