#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "dcd/graph.hpp"

namespace dcd {

struct ClusteringResult {
    std::vector<int> labels;   // length n, values in [0,K)
    Eigen::MatrixXd centers;   // K x m
    double objective = 0.0;    // sum of squared distances to assigned centers
    int iterations = 0;
    int restarts = 0;
};

struct ClusterOptions {
    int restarts = 10;
    int max_iter = 100;
    double tol = 1e-8;  // relative objective change
    std::uint64_t seed = 0;
};

// Lloyd's algorithm with k-means++ seeding, best of restarts; ties in the
// point assignment go to the lowest center index.
ClusteringResult kmeans(const Eigen::MatrixXd& x, int K,
                        const ClusterOptions& opts = {});

// PAM-style swap local search; centers are always data rows.
ClusteringResult kmedoids(const Eigen::MatrixXd& x, int K,
                          const ClusterOptions& opts = {});

// Matrix whose i-th row is centers[labels[i]]; at most K distinct rows.
Eigen::MatrixXd to_mstar(const ClusteringResult& res);

}  // namespace dcd
