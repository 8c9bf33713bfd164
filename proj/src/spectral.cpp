#include "dcd/spectral.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>
#include <cmath>
#include <sstream>

#include "dcd/rng.hpp"

namespace dcd {

namespace {

void fix_signs(SingularTriple& t) {
    // Leading column: entry sum made nonnegative. Others: largest-magnitude
    // entry made positive (first such index on ties).
    auto fix = [](Eigen::MatrixXd& m) {
        if (m.cols() == 0) return;
        if (m.col(0).sum() < 0.0) m.col(0) *= -1.0;
        for (Eigen::Index k = 1; k < m.cols(); ++k) {
            Eigen::Index idx;
            m.col(k).cwiseAbs().maxCoeff(&idx);
            if (m(idx, k) < 0.0) m.col(k) *= -1.0;
        }
    };
    fix(t.U);
    fix(t.V);
}

SingularTriple dense_top_k(const Eigen::MatrixXd& m, int K) {
    Eigen::BDCSVD<Eigen::MatrixXd> svd(m,
                                       Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    SingularTriple t;
    t.U = svd.matrixU().leftCols(K);
    t.V = svd.matrixV().leftCols(K);
    t.sigma = sv.head(K);
    const double s1 = sv(0);
    t.rank_deficient = t.sigma(K - 1) <= 1e-12 * std::max(s1, 1.0);
    if (K < sv.size())
        t.degenerate_gap = (t.sigma(K - 1) - sv(K)) <= 1e-8 * std::max(s1, 1.0);
    fix_signs(t);
    return t;
}

// Block subspace iteration on the pair x -> M x, x -> M^T x with
// Rayleigh-Ritz extraction. Deterministic given opts.seed.
template <typename ApplyA, typename ApplyAt>
SingularTriple subspace_top_k(ApplyA&& apply_a, ApplyAt&& apply_at, NodeId rows,
                              NodeId cols, int K, const SvdOptions& opts) {
    const int p = std::min<int>(std::min(rows, cols), K + opts.oversampling);
    Rng rng(split_seed(opts.seed, 0x5bd));
    Eigen::MatrixXd v_basis(cols, p);
    for (NodeId i = 0; i < cols; ++i)
        for (int j = 0; j < p; ++j) v_basis(i, j) = rng.normal();
    auto orth = [](const Eigen::MatrixXd& x) -> Eigen::MatrixXd {
        Eigen::HouseholderQR<Eigen::MatrixXd> qr(x);
        return qr.householderQ() * Eigen::MatrixXd::Identity(x.rows(), x.cols());
    };
    v_basis = orth(v_basis);

    Eigen::MatrixXd u_basis;
    SingularTriple t;
    double worst_residual = 0.0;
    for (int iter = 0; iter < opts.max_iter; ++iter) {
        u_basis = orth(apply_a(v_basis));
        v_basis = orth(apply_at(u_basis));
        // Rayleigh-Ritz on the p-dimensional subspace
        const Eigen::MatrixXd small = u_basis.transpose() * apply_a(v_basis);
        Eigen::JacobiSVD<Eigen::MatrixXd> ssvd(
            small, Eigen::ComputeFullU | Eigen::ComputeFullV);
        t.U = u_basis * ssvd.matrixU().leftCols(K);
        t.V = v_basis * ssvd.matrixV().leftCols(K);
        t.sigma = ssvd.singularValues().head(K);

        const double s1 = std::max(t.sigma(0), 1e-300);
        worst_residual = 0.0;
        const Eigen::MatrixXd av = apply_a(t.V);
        for (int k = 0; k < K; ++k) {
            const double res = (av.col(k) - t.sigma(k) * t.U.col(k)).norm();
            worst_residual = std::max(worst_residual, res / s1);
        }
        if (worst_residual <= opts.tol) {
            t.rank_deficient = t.sigma(K - 1) <= 1e-12 * std::max(s1, 1.0);
            if (K < p) {
                const double next = ssvd.singularValues()(K);
                t.degenerate_gap =
                    (t.sigma(K - 1) - next) <= 1e-8 * std::max(s1, 1.0);
            }
            fix_signs(t);
            return t;
        }
    }
    std::ostringstream os;
    os << "top_k_svd did not converge after " << opts.max_iter
       << " iterations; achieved relative residual " << worst_residual;
    throw NumericalError(os.str());
}

}  // namespace

SingularTriple top_k_svd(const Eigen::SparseMatrix<double>& m, int K,
                         const SvdOptions& opts) {
    const NodeId rows = static_cast<NodeId>(m.rows());
    const NodeId cols = static_cast<NodeId>(m.cols());
    if (K < 1 || K > std::min(rows, cols))
        throw ValidationError("top_k_svd: K out of range");
    if (std::max(rows, cols) <= opts.dense_limit)
        return dense_top_k(Eigen::MatrixXd(m), K);
    return subspace_top_k(
        [&](const Eigen::MatrixXd& x) -> Eigen::MatrixXd { return m * x; },
        [&](const Eigen::MatrixXd& x) -> Eigen::MatrixXd {
            return m.transpose() * x;
        },
        rows, cols, K, opts);
}

SingularTriple top_k_svd(const Eigen::MatrixXd& m, int K,
                         const SvdOptions& opts) {
    const NodeId rows = static_cast<NodeId>(m.rows());
    const NodeId cols = static_cast<NodeId>(m.cols());
    if (K < 1 || K > std::min(rows, cols))
        throw ValidationError("top_k_svd: K out of range");
    if (std::max(rows, cols) <= opts.dense_limit) return dense_top_k(m, K);
    return subspace_top_k(
        [&](const Eigen::MatrixXd& x) -> Eigen::MatrixXd { return m * x; },
        [&](const Eigen::MatrixXd& x) -> Eigen::MatrixXd {
            return m.transpose() * x;
        },
        rows, cols, K, opts);
}

Eigen::SparseMatrix<double> adjacency_matrix(const DirectedGraph& g) {
    const NodeId n = g.num_nodes();
    std::vector<Eigen::Triplet<double>> trips;
    trips.reserve(g.num_edges());
    for (NodeId i = 0; i < n; ++i)
        for (NodeId j : g.out_neighbors(i)) trips.emplace_back(i, j, 1.0);
    Eigen::SparseMatrix<double> a(n, n);
    a.setFromTriplets(trips.begin(), trips.end());
    return a;
}

Eigen::SparseMatrix<double> regularized_laplacian(const DirectedGraph& g,
                                                  const LaplacianConfig& cfg) {
    const NodeId n = g.num_nodes();
    if (n < 1) throw ValidationError("empty graph");
    const Degrees deg = degrees(g);
    const double tau =
        cfg.tau.value_or(static_cast<double>(g.num_edges()) / n);
    if (tau < 0.0) throw ValidationError("tau must be nonnegative");
    if (tau == 0.0)
        for (NodeId v = 0; v < n; ++v)
            if (deg.out[v] == 0 || deg.in[v] == 0)
                throw NumericalError(
                    "regularized_laplacian: tau = 0 with zero-degree node " +
                    std::to_string(v));
    std::vector<Eigen::Triplet<double>> trips;
    trips.reserve(g.num_edges());
    for (NodeId i = 0; i < n; ++i) {
        const double oi = tau + static_cast<double>(deg.out[i]);
        for (NodeId j : g.out_neighbors(i)) {
            const double pj = tau + static_cast<double>(deg.in[j]);
            trips.emplace_back(i, j, 1.0 / std::sqrt(oi * pj));
        }
    }
    Eigen::SparseMatrix<double> l(n, n);
    l.setFromTriplets(trips.begin(), trips.end());
    return l;
}

}  // namespace dcd
