#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dcd/cluster.hpp"
#include "dcd/graph.hpp"
#include "dcd/ratio.hpp"
#include "dcd/spectral.hpp"

namespace dcd {

enum class AlgorithmFamily { dscore, dscoreq, opca };

struct AlgorithmSpec {
    AlgorithmFamily family = AlgorithmFamily::dscore;
    bool regularized = false;
    int q = 2;                          // dscoreq only
    std::optional<double> T_n;          // absent -> log(#rows)
    std::optional<double> tau;          // absent -> average degree
    ClusterOptions clustering;
    SvdOptions svd;

    static AlgorithmSpec parse(const std::string& name);  // e.g. "rdscore2"
    std::string name() const;
};

struct PipelineResult {
    std::vector<int> labels;  // length n; valid on core ∪ attached
    NodeSet core;
    NodeSet attached;
    std::vector<std::string> warnings;
    // first two feature coordinates per core node, for scatter plots
    Eigen::MatrixXd features;
};

// Run the chosen algorithm on the whole graph (core = all nodes).
PipelineResult run_entire(const DirectedGraph& g, int K,
                          const AlgorithmSpec& spec, std::uint64_t seed);

// Label every node outside `core` with the community maximizing its total
// in+out edge count to labeled core nodes; ties to the smallest community
// index, zero-edge nodes to the largest core community.
std::vector<int> attach(const DirectedGraph& g, const NodeSet& core,
                        const std::vector<int>& core_labels, int K,
                        std::vector<std::string>* warnings = nullptr);

// Intersection-with-attachment: cluster the intersection of the largest
// components of A A^T and A^T A (SVD rows of the full graph restricted to
// the core), then attach the remaining nodes.
PipelineResult run_intersection_attach(const DirectedGraph& g, int K,
                                       const AlgorithmSpec& spec,
                                       std::uint64_t seed);

// Same core clustering without the attachment step; labels outside the core
// are unspecified and evaluation is restricted to core membership.
PipelineResult run_core_only(const DirectedGraph& g, int K,
                             const AlgorithmSpec& spec, std::uint64_t seed);

}  // namespace dcd
