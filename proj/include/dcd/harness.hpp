#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dcd/metrics.hpp"
#include "dcd/model.hpp"
#include "dcd/pipeline.hpp"

namespace dcd {

enum class Scenario {
    sbm_symmetric,          // symmetric B, sparse mixture, delta = theta
    dcbm_symmetric_dense,   // symmetric B, dense mixture, delta = theta
    dcbm_asymmetric_sparse, // asymmetric B, sparse mixture, independent delta
    dcbm_asymmetric_dense,  // asymmetric B, dense mixture, independent delta
    real_data,
};

Scenario scenario_from_name(const std::string& name);
std::string scenario_name(Scenario s);

enum class Approach { entire, intersection_attach, core_only };

Approach approach_from_name(const std::string& name);
std::string approach_name(Approach a);

// Directed-DCBM parameters for one synthetic scenario draw (theta, delta and
// labels resampled per replicate).
DcbmParams scenario_params(Scenario s, NodeId n, std::uint64_t seed);

struct ExperimentConfig {
    Scenario scenario = Scenario::sbm_symmetric;
    std::vector<NodeId> n_grid;  // synthetic scenarios only
    int replicates = 50;
    std::vector<std::string> roster;     // algorithm names, e.g. "dscore"
    std::vector<Approach> approaches;
    std::uint64_t master_seed = 0;
    // real_data only
    std::string edge_file;
    std::string label_file;
    int K = 2;
    int base = 0;

    static ExperimentConfig from_json(const std::string& text);
    std::string to_json() const;
};

struct ReportCell {
    std::string scenario;
    NodeId n = 0;
    std::string algorithm;
    std::string approach;
    AggregateSummary summary;
    int failed_replicates = 0;
};

struct ExperimentReport {
    std::vector<ReportCell> cells;
    std::uint64_t master_seed = 0;
    std::string config_hash;
    std::string timestamp;

    std::string to_csv() const;
    std::string to_json() const;
    const ReportCell* find(const std::string& algorithm,
                           const std::string& approach,
                           NodeId n = -1) const;
};

ExperimentReport run_simulation(const ExperimentConfig& cfg);
ExperimentReport run_real(const ExperimentConfig& cfg);

// Minimal static SVG scatter of the first two feature columns, colored by
// label.
void write_scatter_svg(const Eigen::MatrixXd& features,
                       const std::vector<int>& labels,
                       const std::string& path);

}  // namespace dcd
