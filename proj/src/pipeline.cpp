#include "dcd/pipeline.hpp"

#include <algorithm>
#include <cmath>

#include "dcd/rng.hpp"

namespace dcd {

AlgorithmSpec AlgorithmSpec::parse(const std::string& name) {
    AlgorithmSpec spec;
    std::string s = name;
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    if (!s.empty() && s.front() == 'r' && s != "rpca") {
        spec.regularized = true;
        s = s.substr(1);
    }
    if (s == "rpca") {
        spec.regularized = true;
        s = "opca";
    }
    if (s == "dscore") {
        spec.family = AlgorithmFamily::dscore;
    } else if (s == "opca" || s == "pca") {
        spec.family = AlgorithmFamily::opca;
    } else if (s.rfind("dscore", 0) == 0) {
        spec.family = AlgorithmFamily::dscoreq;
        const std::string suffix = s.substr(6);
        if (suffix == "q" || suffix.empty()) {
            spec.q = 2;
        } else {
            try {
                spec.q = std::stoi(suffix);
            } catch (...) {
                throw ValidationError("unknown algorithm: " + name);
            }
            if (spec.q < 1) throw ValidationError("q must be >= 1");
        }
    } else {
        throw ValidationError("unknown algorithm: " + name);
    }
    return spec;
}

std::string AlgorithmSpec::name() const {
    std::string s = regularized ? "r" : "";
    switch (family) {
        case AlgorithmFamily::dscore:
            return s + "dscore";
        case AlgorithmFamily::dscoreq:
            return s + "dscore" + std::to_string(q);
        case AlgorithmFamily::opca:
            return regularized ? "rpca" : "opca";
    }
    return s;
}

namespace {

Eigen::MatrixXd build_features(const Eigen::MatrixXd& u,
                               const Eigen::MatrixXd& v,
                               const AlgorithmSpec& spec) {
    const Eigen::Index rows = u.rows();
    SingularTriple sv;
    sv.U = u;
    sv.V = v;
    switch (spec.family) {
        case AlgorithmFamily::dscore: {
            RatioConfig cfg{spec.T_n.value_or(std::log(static_cast<double>(rows))),
                            2};
            return dscore_ratio(sv, cfg).data;
        }
        case AlgorithmFamily::dscoreq: {
            RatioConfig cfg{spec.T_n.value_or(std::log(static_cast<double>(rows))),
                            spec.q};
            return dscoreq_ratio(sv, cfg).data;
        }
        case AlgorithmFamily::opca: {
            Eigen::MatrixXd r(rows, u.cols() + v.cols());
            r << u, v;
            return r;
        }
    }
    throw ValidationError("unreachable algorithm family");
}

SingularTriple spectral_step(const DirectedGraph& g, int K,
                             const AlgorithmSpec& spec, std::uint64_t seed) {
    if (K < 1) throw ValidationError("K must be >= 1");
    if (spec.family != AlgorithmFamily::opca && K < 2)
        throw ValidationError("D-SCORE family requires K >= 2");
    SvdOptions svd_opts = spec.svd;
    svd_opts.seed = split_seed(seed, 1);
    const Eigen::SparseMatrix<double> m =
        spec.regularized ? regularized_laplacian(g, LaplacianConfig{spec.tau})
                         : adjacency_matrix(g);
    return top_k_svd(m, K, svd_opts);
}

ClusteringResult cluster_features(const Eigen::MatrixXd& features, int K,
                                  const AlgorithmSpec& spec,
                                  std::uint64_t seed) {
    ClusterOptions opts = spec.clustering;
    opts.seed = split_seed(seed, 2);
    return kmeans(features, K, opts);
}

}  // namespace

PipelineResult run_entire(const DirectedGraph& g, int K,
                          const AlgorithmSpec& spec, std::uint64_t seed) {
    const SingularTriple sv = spectral_step(g, K, spec, seed);
    PipelineResult res;
    if (sv.degenerate_gap) res.warnings.push_back("degenerate singular gap");
    res.features = build_features(sv.U, sv.V, spec);
    res.labels = cluster_features(res.features, K, spec, seed).labels;
    res.core = NodeSet::full(g.num_nodes());
    res.attached = NodeSet(std::vector<NodeId>{}, g.num_nodes());
    return res;
}

std::vector<int> attach(const DirectedGraph& g, const NodeSet& core,
                        const std::vector<int>& core_labels, int K,
                        std::vector<std::string>* warnings) {
    if (core.empty()) throw ValidationError("attach: empty core");
    std::vector<int> labels = core_labels;
    std::vector<std::int64_t> community_size(static_cast<std::size_t>(K), 0);
    for (NodeId v : core.members())
        ++community_size[static_cast<std::size_t>(core_labels[v])];
    // largest community, smallest index on ties: deterministic fallback
    const int fallback = static_cast<int>(std::distance(
        community_size.begin(),
        std::max_element(community_size.begin(), community_size.end())));
    for (NodeId v = 0; v < g.num_nodes(); ++v) {
        if (core.contains(v)) continue;
        std::vector<std::int64_t> count(static_cast<std::size_t>(K), 0);
        for (NodeId j : g.out_neighbors(v))
            if (core.contains(j)) ++count[static_cast<std::size_t>(core_labels[j])];
        for (NodeId j : g.in_neighbors(v))
            if (core.contains(j)) ++count[static_cast<std::size_t>(core_labels[j])];
        const auto best = std::max_element(count.begin(), count.end());
        if (*best == 0) {
            labels[v] = fallback;
            if (warnings)
                warnings->push_back("node " + std::to_string(v) +
                                    " has no edge to the core");
        } else {
            labels[v] = static_cast<int>(std::distance(count.begin(), best));
        }
    }
    return labels;
}

namespace {

PipelineResult run_on_core(const DirectedGraph& g, int K,
                           const AlgorithmSpec& spec, std::uint64_t seed,
                           bool with_attachment) {
    const NodeSet s_l = product_component(g, ProductSide::left);
    const NodeSet s_r = product_component(g, ProductSide::right);
    const NodeSet core = s_l.intersect(s_r);
    if (static_cast<int>(core.size()) < K)
        throw NumericalError("intersection core smaller than K (" +
                             std::to_string(core.size()) + " nodes)");

    // SVD of the full graph; rows restricted to the core afterwards. The
    // restricted rows feed the ratio step directly (no re-SVD of the
    // induced subgraph).
    const SingularTriple sv = spectral_step(g, K, spec, seed);
    const Eigen::Index csize = static_cast<Eigen::Index>(core.size());
    Eigen::MatrixXd u(csize, K), v(csize, K);
    for (Eigen::Index r = 0; r < csize; ++r) {
        u.row(r) = sv.U.row(core.members()[static_cast<std::size_t>(r)]);
        v.row(r) = sv.V.row(core.members()[static_cast<std::size_t>(r)]);
    }

    PipelineResult res;
    if (sv.degenerate_gap) res.warnings.push_back("degenerate singular gap");
    res.features = build_features(u, v, spec);
    const ClusteringResult cl = cluster_features(res.features, K, spec, seed);

    res.labels.assign(static_cast<std::size_t>(g.num_nodes()), 0);
    for (Eigen::Index r = 0; r < csize; ++r)
        res.labels[static_cast<std::size_t>(
            core.members()[static_cast<std::size_t>(r)])] =
            cl.labels[static_cast<std::size_t>(r)];
    res.core = core;

    if (with_attachment) {
        res.labels = attach(g, core, res.labels, K, &res.warnings);
        std::vector<NodeId> rest;
        for (NodeId n = 0; n < g.num_nodes(); ++n)
            if (!core.contains(n)) rest.push_back(n);
        res.attached = NodeSet(std::move(rest), g.num_nodes());
    } else {
        res.attached = NodeSet(std::vector<NodeId>{}, g.num_nodes());
    }
    return res;
}

}  // namespace

PipelineResult run_intersection_attach(const DirectedGraph& g, int K,
                                       const AlgorithmSpec& spec,
                                       std::uint64_t seed) {
    return run_on_core(g, K, spec, seed, true);
}

PipelineResult run_core_only(const DirectedGraph& g, int K,
                             const AlgorithmSpec& spec, std::uint64_t seed) {
    return run_on_core(g, K, spec, seed, false);
}

}  // namespace dcd
