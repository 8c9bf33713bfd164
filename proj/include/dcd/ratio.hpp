#pragma once

#include <Eigen/Dense>
#include <cmath>

#include "dcd/model.hpp"
#include "dcd/spectral.hpp"

namespace dcd {

struct RatioConfig {
    double T_n;  // truncation threshold, > 0
    int q = 2;   // norm order for the row-normalized variant, >= 1

    static RatioConfig for_rows(Eigen::Index n, int q = 2) {
        return RatioConfig{std::log(static_cast<double>(n)), q};
    }
};

enum class RatioKind { dscore, dscoreq };

struct RatioMatrix {
    Eigen::MatrixXd data;  // n x (2K-2) for dscore, n x 2K for dscoreq
    RatioKind kind;
    RatioConfig config;
};

// Entrywise first-column ratios U_{k+1}(i)/U_1(i), clamped to [-T_n, T_n];
// columns [R_U, R_V]. Requires K >= 2.
RatioMatrix dscore_ratio(const SingularTriple& sv, const RatioConfig& cfg);

// Row l_q normalization U_k(i)/||U_row(i)||_q, clamped the same way.
RatioMatrix dscoreq_ratio(const SingularTriple& sv, const RatioConfig& cfg);

// Population ratio matrix [R_U, R_V] built from the exact singular vectors
// of Omega; has exactly K distinct rows.
RatioMatrix oracle_dscore_ratio(const TheoreticalSvd& t, const RatioConfig& cfg);
RatioMatrix oracle_dscoreq_ratio(const TheoreticalSvd& t, const RatioConfig& cfg);

}  // namespace dcd
