#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "dcd/metrics.hpp"
#include "dcd/rng.hpp"

using namespace dcd;

namespace {

// minimum disagreement over all K! permutations
std::int64_t permutation_oracle(const std::vector<int>& pred,
                                const std::vector<int>& truth, int K) {
    std::vector<int> perm(K);
    std::iota(perm.begin(), perm.end(), 0);
    std::int64_t best = static_cast<std::int64_t>(pred.size());
    do {
        std::int64_t bad = 0;
        for (std::size_t i = 0; i < pred.size(); ++i)
            if (perm[pred[i]] != truth[i]) ++bad;
        best = std::min(best, bad);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

std::vector<int> random_labels(std::size_t n, int K, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<int> out(n);
    for (auto& v : out) v = static_cast<int>(rng.uniform_int(K));
    return out;
}

}  // namespace

TEST_CASE("misclustering identity and relabeling") {
    std::vector<int> truth{0, 0, 1, 1, 2, 2};
    auto same = misclustering(truth, truth, 3);
    CHECK(same.misclustered == 0);
    CHECK(same.rate == 0.0);

    std::vector<int> swapped{1, 1, 0, 0, 2, 2};
    auto r = misclustering(swapped, truth, 3);
    CHECK(r.misclustered == 0);
    CHECK(r.matching[1] == 0);
    CHECK(r.matching[0] == 1);
    CHECK(r.matching[2] == 2);
}

TEST_CASE("misclustering counts a single flip") {
    std::vector<int> truth{0, 0, 0, 1, 1, 1};
    std::vector<int> pred{0, 0, 1, 1, 1, 1};
    auto r = misclustering(pred, truth, 2);
    CHECK(r.misclustered == 1);
    CHECK(r.rate == doctest::Approx(1.0 / 6.0));
    CHECK(r.n == 6);
    CHECK(r.K == 2);
}

TEST_CASE("misclustering equals the factorial oracle") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const int K = 4;
        auto truth = random_labels(30, K, seed);
        auto pred = random_labels(30, K, seed + 1000);
        auto r = misclustering(pred, truth, K);
        CHECK(r.misclustered == permutation_oracle(pred, truth, K));
        CHECK(r.rate == doctest::Approx(double(r.misclustered) / 30.0));
        // matching achieves the reported count
        std::int64_t bad = 0;
        for (std::size_t i = 0; i < pred.size(); ++i)
            if (r.matching[pred[i]] != truth[i]) ++bad;
        CHECK(bad == r.misclustered);
    }
}

TEST_CASE("misclustering is symmetric in its arguments") {
    for (std::uint64_t seed = 50; seed < 56; ++seed) {
        auto a = random_labels(40, 3, seed);
        auto b = random_labels(40, 3, seed + 7);
        CHECK(misclustering(a, b, 3).misclustered ==
              misclustering(b, a, 3).misclustered);
    }
}

TEST_CASE("misclustering handles absent predicted labels") {
    // predictor never emits label 2; assignment still well defined
    std::vector<int> truth{0, 0, 1, 1, 2, 2};
    std::vector<int> pred{0, 0, 1, 1, 1, 1};
    auto r = misclustering(pred, truth, 3);
    CHECK(r.misclustered == 2);
}

TEST_CASE("misclustering input validation") {
    std::vector<int> a{0, 1}, b{0};
    CHECK_THROWS_AS(misclustering(a, b, 2), ValidationError);
    std::vector<int> bad{0, 5};
    std::vector<int> ok{0, 1};
    CHECK_THROWS_AS(misclustering(bad, ok, 2), ValidationError);
    CHECK_THROWS_AS(misclustering(ok, bad, 2), ValidationError);
}

TEST_CASE("max_weight_assignment small cases") {
    CHECK(max_weight_assignment({{5}}) == std::vector<int>{0});
    // anti-diagonal is optimal
    std::vector<std::vector<std::int64_t>> w{{1, 10}, {10, 1}};
    CHECK(max_weight_assignment(w) == std::vector<int>{1, 0});
    // degenerate equal weights: still a permutation
    std::vector<std::vector<std::int64_t>> eq(3,
                                              std::vector<std::int64_t>(3, 2));
    auto a = max_weight_assignment(eq);
    std::vector<int> sorted = a;
    std::sort(sorted.begin(), sorted.end());
    CHECK(sorted == std::vector<int>{0, 1, 2});
}

TEST_CASE("max_weight_assignment equals brute force") {
    Rng rng(77);
    for (int trial = 0; trial < 30; ++trial) {
        const int K = 5;
        std::vector<std::vector<std::int64_t>> w(
            K, std::vector<std::int64_t>(K));
        for (auto& row : w)
            for (auto& v : row)
                v = static_cast<std::int64_t>(rng.uniform_int(100));
        auto got = max_weight_assignment(w);
        std::int64_t got_total = 0;
        std::vector<int> seen = got;
        std::sort(seen.begin(), seen.end());
        CHECK(seen == std::vector<int>{0, 1, 2, 3, 4});
        for (int r = 0; r < K; ++r) got_total += w[r][got[r]];
        std::vector<int> perm{0, 1, 2, 3, 4};
        std::int64_t best = 0;
        do {
            std::int64_t total = 0;
            for (int r = 0; r < K; ++r) total += w[r][perm[r]];
            best = std::max(best, total);
        } while (std::next_permutation(perm.begin(), perm.end()));
        CHECK(got_total == best);
    }
}

TEST_CASE("aggregate recomputes summary statistics") {
    std::vector<EvalReport> reps;
    const std::vector<std::int64_t> counts{3, 7, 5, 1};
    for (auto c : counts) {
        EvalReport r;
        r.misclustered = c;
        r.n = 50;
        r.rate = double(c) / 50.0;
        reps.push_back(r);
    }
    auto s = aggregate(reps);
    CHECK(s.replicates == 4);
    CHECK(s.mean_count == doctest::Approx(4.0));
    CHECK(s.mean_rate == doctest::Approx(4.0 / 50.0));
    CHECK(s.min_count == 1);
    CHECK(s.max_count == 7);
    // unbiased sample standard error: sd/sqrt(m)
    double var = 0.0;
    for (auto c : counts) var += (c - 4.0) * (c - 4.0);
    var /= 3.0;
    CHECK(s.stderr_count == doctest::Approx(std::sqrt(var / 4.0)));
    CHECK(s.stderr_rate == doctest::Approx(std::sqrt(var / 4.0) / 50.0));
}

TEST_CASE("aggregate of a single replicate has zero stderr") {
    EvalReport r;
    r.misclustered = 4;
    r.n = 10;
    r.rate = 0.4;
    auto s = aggregate({r});
    CHECK(s.mean_count == doctest::Approx(4.0));
    CHECK(s.stderr_count == 0.0);
    CHECK_THROWS_AS(aggregate({}), ValidationError);
}
