#pragma once

#include <Eigen/Dense>

#include "dcd/model.hpp"
#include "dcd/rng.hpp"

namespace dcd::test {

// Random valid Directed-DCBM parameters: diagonal-dominant B keeps the
// B B^T pattern irreducible, heterogeneity away from 0.
inline DcbmParams random_params(int K, NodeId n, std::uint64_t seed) {
    Rng rng(seed);
    DcbmParams p;
    p.K = K;
    p.B.resize(K, K);
    for (int r = 0; r < K; ++r)
        for (int c = 0; c < K; ++c)
            p.B(r, c) = r == c ? 0.7 + 0.3 * rng.uniform01()
                               : 0.1 + 0.4 * rng.uniform01();
    p.theta.resize(n);
    p.delta.resize(n);
    for (NodeId i = 0; i < n; ++i) {
        p.theta(i) = 0.2 + 0.7 * rng.uniform01();
        p.delta(i) = 0.2 + 0.7 * rng.uniform01();
    }
    p.labels.resize(static_cast<std::size_t>(n));
    for (auto& lab : p.labels) lab = static_cast<int>(rng.uniform_int(K));
    for (int k = 0; k < K; ++k) p.labels[static_cast<std::size_t>(k)] = k;
    return p;
}

}  // namespace dcd::test
