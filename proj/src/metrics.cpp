#include "dcd/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace dcd {

// Hungarian algorithm (potentials form), minimizing; O(K^3).
std::vector<int> max_weight_assignment(
    const std::vector<std::vector<std::int64_t>>& weight) {
    const int n = static_cast<int>(weight.size());
    std::int64_t top = 0;
    for (const auto& row : weight)
        for (std::int64_t w : row) top = std::max(top, w);
    // minimize cost = top - weight
    const std::int64_t inf = std::numeric_limits<std::int64_t>::max() / 4;
    std::vector<std::int64_t> u(n + 1, 0), v(n + 1, 0);
    std::vector<int> p(n + 1, 0), way(n + 1, 0);
    for (int i = 1; i <= n; ++i) {
        p[0] = i;
        int j0 = 0;
        std::vector<std::int64_t> minv(n + 1, inf);
        std::vector<char> used(n + 1, false);
        do {
            used[j0] = true;
            const int i0 = p[j0];
            std::int64_t delta = inf;
            int j1 = 0;
            for (int j = 1; j <= n; ++j) {
                if (used[j]) continue;
                const std::int64_t cur =
                    (top - weight[i0 - 1][j - 1]) - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (int j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (p[j0] != 0);
        do {
            const int j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
        } while (j0);
    }
    std::vector<int> row_to_col(n, -1);
    for (int j = 1; j <= n; ++j)
        if (p[j] > 0) row_to_col[p[j] - 1] = j - 1;
    return row_to_col;
}

EvalReport misclustering(const std::vector<int>& pred,
                         const std::vector<int>& truth, int K) {
    if (pred.size() != truth.size())
        throw ValidationError("misclustering: length mismatch");
    if (K < 1) throw ValidationError("misclustering: K must be >= 1");
    std::vector<std::vector<std::int64_t>> confusion(
        static_cast<std::size_t>(K),
        std::vector<std::int64_t>(static_cast<std::size_t>(K), 0));
    for (std::size_t i = 0; i < pred.size(); ++i) {
        if (pred[i] < 0 || pred[i] >= K || truth[i] < 0 || truth[i] >= K)
            throw ValidationError("misclustering: label out of range");
        ++confusion[static_cast<std::size_t>(pred[i])]
                   [static_cast<std::size_t>(truth[i])];
    }
    EvalReport r;
    r.n = static_cast<std::int64_t>(pred.size());
    r.K = K;
    r.matching = max_weight_assignment(confusion);
    std::int64_t agreement = 0;
    for (int k = 0; k < K; ++k)
        agreement += confusion[static_cast<std::size_t>(k)]
                              [static_cast<std::size_t>(r.matching[k])];
    r.misclustered = r.n - agreement;
    r.rate = r.n > 0 ? static_cast<double>(r.misclustered) /
                           static_cast<double>(r.n)
                     : 0.0;
    return r;
}

AggregateSummary aggregate(const std::vector<EvalReport>& reports) {
    if (reports.empty()) throw ValidationError("aggregate: empty report list");
    AggregateSummary s;
    s.replicates = reports.size();
    s.min_count = reports.front().misclustered;
    s.max_count = reports.front().misclustered;
    double sum_count = 0.0, sum_rate = 0.0;
    for (const auto& r : reports) {
        sum_count += static_cast<double>(r.misclustered);
        sum_rate += r.rate;
        s.min_count = std::min(s.min_count, r.misclustered);
        s.max_count = std::max(s.max_count, r.misclustered);
    }
    const double m = static_cast<double>(reports.size());
    s.mean_count = sum_count / m;
    s.mean_rate = sum_rate / m;
    if (reports.size() > 1) {
        double var_count = 0.0, var_rate = 0.0;
        for (const auto& r : reports) {
            var_count += (r.misclustered - s.mean_count) *
                         (r.misclustered - s.mean_count);
            var_rate += (r.rate - s.mean_rate) * (r.rate - s.mean_rate);
        }
        var_count /= (m - 1.0);
        var_rate /= (m - 1.0);
        s.stderr_count = std::sqrt(var_count / m);
        s.stderr_rate = std::sqrt(var_rate / m);
    }
    return s;
}

}  // namespace dcd
