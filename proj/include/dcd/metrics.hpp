#pragma once

#include <vector>

#include "dcd/graph.hpp"

namespace dcd {

struct EvalReport {
    std::int64_t misclustered = 0;
    double rate = 0.0;
    std::vector<int> matching;  // predicted label -> true label
    std::int64_t n = 0;
    int K = 0;
};

// Minimum over label permutations of the disagreement count; solved exactly
// by assignment on the K x K confusion matrix.
EvalReport misclustering(const std::vector<int>& pred,
                         const std::vector<int>& truth, int K);

struct AggregateSummary {
    double mean_count = 0.0;
    double mean_rate = 0.0;
    double stderr_count = 0.0;
    double stderr_rate = 0.0;
    std::int64_t min_count = 0;
    std::int64_t max_count = 0;
    std::size_t replicates = 0;
};

AggregateSummary aggregate(const std::vector<EvalReport>& reports);

// Maximum-total-weight assignment of rows to columns of a square matrix;
// returns the column chosen for each row. Exposed for reuse and testing.
std::vector<int> max_weight_assignment(
    const std::vector<std::vector<std::int64_t>>& weight);

}  // namespace dcd
