#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "dcd/graph.hpp"

namespace dcd {

struct ResourceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Full generative specification of the directed degree-corrected block
// model: edge (i,j) is Bernoulli with probability theta(i)*B(c_i,c_j)*delta(j).
struct DcbmParams {
    int K = 0;
    Eigen::MatrixXd B;        // K x K, entries in [0,1]
    Eigen::VectorXd theta;    // length n, entries in (0,1]
    Eigen::VectorXd delta;    // length n, entries in (0,1]
    std::vector<int> labels;  // length n, values in [0,K)

    NodeId n() const { return static_cast<NodeId>(labels.size()); }
};

struct DcbmDiagnostics {
    double Z = 0.0;
    double err_n = 0.0;
    std::vector<double> theta_community_norm;  // ||theta^(k)||, k=0..K-1
    std::vector<double> delta_community_norm;
    double theta_norm_spread = 0.0;  // max_k / min_k of ||theta^(k)||
    double delta_norm_spread = 0.0;
    bool bbt_nonsingular = false;
    bool bbt_nonnegative = false;
    bool bbt_irreducible = false;
    bool btb_nonsingular = false;
    bool btb_nonnegative = false;
    bool btb_irreducible = false;

    bool all_flags() const {
        return bbt_nonsingular && bbt_nonnegative && bbt_irreducible &&
               btb_nonsingular && btb_nonnegative && btb_irreducible;
    }
};

// Exact SVD structure of Omega = E[A]: sigma_i = ||theta||*||delta||*sigma_i(S)
// with S = Psi_theta * B * Psi_delta^T, and row forms
//   U(i,:) = theta(i)/||theta^(c_i)|| * Y(c_i,:)
//   V(i,:) = delta(i)/||delta^(c_i)|| * H(c_i,:).
struct TheoreticalSvd {
    Eigen::MatrixXd U;         // n x K, orthonormal columns
    Eigen::MatrixXd V;         // n x K
    Eigen::VectorXd sigma;     // K, descending
    Eigen::MatrixXd S;         // K x K
    Eigen::MatrixXd Y;         // K x K left factors of S
    Eigen::MatrixXd H;         // K x K right factors of S
    Eigen::VectorXd lambda_s;  // singular values of S
    Eigen::VectorXd psi_theta;  // diagonal of Psi_theta
    Eigen::VectorXd psi_delta;
};

// Discrete mixture atom for heterogeneity parameters.
struct MixtureAtom {
    double value;
    double mass;  // relative mass; atoms are normalized to sum to 1
};

DcbmDiagnostics validate(const DcbmParams& params);

DirectedGraph sample_adjacency(const DcbmParams& params, std::uint64_t seed,
                               bool include_diagonal = true);

constexpr NodeId kDenseLimit = 5000;

Eigen::MatrixXd expected_matrix(const DcbmParams& params);

Eigen::MatrixXd noise_matrix(const DirectedGraph& a, const DcbmParams& params);

TheoreticalSvd theoretical_svd(const DcbmParams& params);

Eigen::VectorXd sample_theta_mixture(const std::vector<MixtureAtom>& spec,
                                     NodeId n, std::uint64_t seed);

// Structured (JSON) config round-trip for params; theta/delta may be given
// either as explicit vectors or as mixture specs resolved at load time.
std::string params_to_json(const DcbmParams& params);
DcbmParams params_from_json(const std::string& text);

}  // namespace dcd
