#include "dcd/cluster.hpp"

#include <cmath>
#include <limits>

#include "dcd/rng.hpp"

namespace dcd {

namespace {

double sq_dist(const Eigen::MatrixXd& x, Eigen::Index i,
               const Eigen::MatrixXd& centers, Eigen::Index k) {
    return (x.row(i) - centers.row(k)).squaredNorm();
}

// assignment with lowest-index tie-break; returns objective
double assign(const Eigen::MatrixXd& x, const Eigen::MatrixXd& centers,
              std::vector<int>& labels) {
    double objective = 0.0;
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
        int best = 0;
        double best_d = sq_dist(x, i, centers, 0);
        for (Eigen::Index k = 1; k < centers.rows(); ++k) {
            const double d = sq_dist(x, i, centers, k);
            if (d < best_d) {
                best_d = d;
                best = static_cast<int>(k);
            }
        }
        labels[static_cast<std::size_t>(i)] = best;
        objective += best_d;
    }
    return objective;
}

Eigen::MatrixXd kmeanspp_init(const Eigen::MatrixXd& x, int K, Rng& rng) {
    const Eigen::Index n = x.rows();
    Eigen::MatrixXd centers(K, x.cols());
    centers.row(0) = x.row(static_cast<Eigen::Index>(rng.uniform_int(n)));
    Eigen::VectorXd dist2(n);
    for (Eigen::Index i = 0; i < n; ++i)
        dist2(i) = (x.row(i) - centers.row(0)).squaredNorm();
    for (int k = 1; k < K; ++k) {
        const double total = dist2.sum();
        Eigen::Index pick = 0;
        if (total > 0.0) {
            double u = rng.uniform01() * total;
            double acc = 0.0;
            for (Eigen::Index i = 0; i < n; ++i) {
                acc += dist2(i);
                if (u < acc) {
                    pick = i;
                    break;
                }
            }
        } else {
            pick = static_cast<Eigen::Index>(rng.uniform_int(n));
        }
        centers.row(k) = x.row(pick);
        for (Eigen::Index i = 0; i < n; ++i)
            dist2(i) =
                std::min(dist2(i), (x.row(i) - centers.row(k)).squaredNorm());
    }
    return centers;
}

ClusteringResult lloyd(const Eigen::MatrixXd& x, int K,
                       const ClusterOptions& opts, Rng& rng) {
    const Eigen::Index n = x.rows();
    ClusteringResult res;
    res.centers = kmeanspp_init(x, K, rng);
    res.labels.assign(static_cast<std::size_t>(n), 0);
    double prev = std::numeric_limits<double>::infinity();
    for (int it = 0; it < opts.max_iter; ++it) {
        res.objective = assign(x, res.centers, res.labels);
        res.iterations = it + 1;
        if (prev - res.objective <= opts.tol * std::max(prev, 1e-300) &&
            std::isfinite(prev))
            break;
        prev = res.objective;
        // recompute centers
        Eigen::MatrixXd sums = Eigen::MatrixXd::Zero(K, x.cols());
        std::vector<std::int64_t> counts(static_cast<std::size_t>(K), 0);
        for (Eigen::Index i = 0; i < n; ++i) {
            sums.row(res.labels[static_cast<std::size_t>(i)]) += x.row(i);
            ++counts[static_cast<std::size_t>(
                res.labels[static_cast<std::size_t>(i)])];
        }
        for (int k = 0; k < K; ++k) {
            if (counts[static_cast<std::size_t>(k)] > 0) {
                res.centers.row(k) =
                    sums.row(k) /
                    static_cast<double>(counts[static_cast<std::size_t>(k)]);
            } else {
                // empty-cluster repair: reseed at the point farthest from its
                // assigned center
                Eigen::Index far = 0;
                double far_d = -1.0;
                for (Eigen::Index i = 0; i < n; ++i) {
                    const double d = sq_dist(
                        x, i, res.centers,
                        res.labels[static_cast<std::size_t>(i)]);
                    if (d > far_d) {
                        far_d = d;
                        far = i;
                    }
                }
                res.centers.row(k) = x.row(far);
            }
        }
    }
    res.objective = assign(x, res.centers, res.labels);
    return res;
}

}  // namespace

ClusteringResult kmeans(const Eigen::MatrixXd& x, int K,
                        const ClusterOptions& opts) {
    if (K < 1 || x.rows() < K)
        throw ValidationError("kmeans: need n >= K >= 1");
    ClusteringResult best;
    best.objective = std::numeric_limits<double>::infinity();
    for (int r = 0; r < opts.restarts; ++r) {
        Rng rng(split_seed(opts.seed, static_cast<std::uint64_t>(r)));
        ClusteringResult cand = lloyd(x, K, opts, rng);
        cand.restarts = r + 1;
        if (cand.objective < best.objective) {
            cand.restarts = opts.restarts;
            best = std::move(cand);
        }
    }
    best.restarts = opts.restarts;
    return best;
}

ClusteringResult kmedoids(const Eigen::MatrixXd& x, int K,
                          const ClusterOptions& opts) {
    if (K < 1 || x.rows() < K)
        throw ValidationError("kmedoids: need n >= K >= 1");
    const Eigen::Index n = x.rows();
    ClusteringResult best;
    best.objective = std::numeric_limits<double>::infinity();
    for (int r = 0; r < opts.restarts; ++r) {
        Rng rng(split_seed(opts.seed, 0x9d0 + static_cast<std::uint64_t>(r)));
        // initialize medoids via k-means++ style seeding, then swap search
        Eigen::MatrixXd centers = kmeanspp_init(x, K, rng);
        std::vector<int> labels(static_cast<std::size_t>(n), 0);
        double obj = assign(x, centers, labels);
        int iters = 0;
        bool improved = true;
        while (improved && iters < opts.max_iter) {
            improved = false;
            ++iters;
            for (int k = 0; k < K; ++k) {
                for (Eigen::Index cand = 0; cand < n; ++cand) {
                    const Eigen::RowVectorXd saved = centers.row(k);
                    centers.row(k) = x.row(cand);
                    std::vector<int> trial_labels(static_cast<std::size_t>(n));
                    const double trial = assign(x, centers, trial_labels);
                    if (trial + 1e-15 < obj) {
                        obj = trial;
                        labels = trial_labels;
                        improved = true;
                    } else {
                        centers.row(k) = saved;
                    }
                }
            }
        }
        if (obj < best.objective) {
            best.labels = labels;
            best.centers = centers;
            best.objective = obj;
            best.iterations = iters;
        }
    }
    best.restarts = opts.restarts;
    return best;
}

Eigen::MatrixXd to_mstar(const ClusteringResult& res) {
    Eigen::MatrixXd m(static_cast<Eigen::Index>(res.labels.size()),
                      res.centers.cols());
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        m.row(i) = res.centers.row(res.labels[static_cast<std::size_t>(i)]);
    return m;
}

}  // namespace dcd
