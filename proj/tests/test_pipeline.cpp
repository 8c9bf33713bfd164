#include <doctest.h>

#include <algorithm>

#include "dcd/metrics.hpp"
#include "dcd/model.hpp"
#include "dcd/pipeline.hpp"
#include "helpers.hpp"

using namespace dcd;

namespace {

// two directed cliques with no edges between them
DirectedGraph two_cliques(NodeId per_side) {
    std::vector<std::pair<NodeId, NodeId>> edges;
    for (NodeId i = 0; i < per_side; ++i)
        for (NodeId j = 0; j < per_side; ++j)
            if (i != j) {
                edges.emplace_back(i, j);
                edges.emplace_back(per_side + i, per_side + j);
            }
    return DirectedGraph(2 * per_side, std::move(edges));
}

std::vector<int> clique_truth(NodeId per_side) {
    std::vector<int> t(static_cast<std::size_t>(2 * per_side), 0);
    for (NodeId i = per_side; i < 2 * per_side; ++i) t[i] = 1;
    return t;
}

}  // namespace

TEST_CASE("run_entire separates two disconnected cliques perfectly") {
    const auto g = two_cliques(20);
    const auto truth = clique_truth(20);
    for (const char* algo : {"opca", "dscore", "dscore2", "rpca", "rdscore"}) {
        auto res = run_entire(g, 2, AlgorithmSpec::parse(algo), 7);
        CHECK(misclustering(res.labels, truth, 2).misclustered == 0);
    }
}

TEST_CASE("feature dimensions per family") {
    auto p = test::random_params(3, 80, 3);
    auto g = sample_adjacency(p, 5);
    auto d = run_entire(g, 3, AlgorithmSpec::parse("dscore"), 1);
    CHECK(d.features.cols() == 4);  // 2K - 2
    auto q = run_entire(g, 3, AlgorithmSpec::parse("dscore2"), 1);
    CHECK(q.features.cols() == 6);  // 2K
    auto o = run_entire(g, 3, AlgorithmSpec::parse("opca"), 1);
    CHECK(o.features.cols() == 6);
    CHECK(d.features.rows() == 80);
    CHECK(d.core.size() == 80);
    CHECK(d.attached.empty());
}

TEST_CASE("run_entire is deterministic in the seed") {
    auto p = test::random_params(2, 60, 9);
    auto g = sample_adjacency(p, 2);
    auto a = run_entire(g, 2, AlgorithmSpec::parse("dscore"), 42);
    auto b = run_entire(g, 2, AlgorithmSpec::parse("dscore"), 42);
    CHECK(a.labels == b.labels);
    CHECK((a.features - b.features).norm() == 0.0);
}

TEST_CASE("attach follows the edge-count argmax") {
    // core = {0,1,2,3}; labels 0,0,1,1. Node 4 has two edges into community 1
    // and one into community 0.
    DirectedGraph g(6, {{0, 1}, {1, 0}, {2, 3}, {3, 2}, {4, 2}, {3, 4}, {0, 4},
                        {5, 0}});
    NodeSet core({0, 1, 2, 3}, 6);
    std::vector<int> labels{0, 0, 1, 1, -1, -1};
    auto out = attach(g, core, labels, 2);
    CHECK(out[4] == 1);
    CHECK(out[5] == 0);
    // core labels never change
    for (NodeId v : core.members()) CHECK(out[v] == labels[v]);
}

TEST_CASE("attach tie goes to the smallest community index") {
    DirectedGraph g(5, {{0, 1}, {2, 3}, {4, 0}, {4, 2}});
    NodeSet core({0, 1, 2, 3}, 5);
    std::vector<int> labels{1, 1, 0, 0, -1};
    auto out = attach(g, core, labels, 2);  // one edge to each community
    CHECK(out[4] == 0);
}

TEST_CASE("attach zero-edge fallback with warning") {
    DirectedGraph g(5, {{0, 1}, {1, 0}, {2, 0}});
    NodeSet core({0, 1, 2}, 5);
    std::vector<int> labels{0, 0, 1, -1, -1};
    std::vector<std::string> warnings;
    auto out = attach(g, core, labels, 2, &warnings);
    CHECK(out[3] == 0);  // largest core community
    CHECK(out[4] == 0);
    CHECK(warnings.size() == 2);
    CHECK(warnings[0].find("node 3") != std::string::npos);
}

TEST_CASE("attach matches a dense edge-count oracle") {
    auto p = test::random_params(2, 50, 15);
    auto g = sample_adjacency(p, 6);
    std::vector<NodeId> core_nodes;
    for (NodeId v = 0; v < 35; ++v) core_nodes.push_back(v);
    NodeSet core(std::move(core_nodes), 50);
    std::vector<int> labels(50, 0);
    for (NodeId v = 0; v < 35; ++v) labels[v] = v % 2;
    auto out = attach(g, core, labels, 2);
    for (NodeId v = 35; v < 50; ++v) {
        std::int64_t cnt[2] = {0, 0};
        for (NodeId u = 0; u < 35; ++u) {
            if (g.has_edge(v, u)) ++cnt[labels[u]];
            if (g.has_edge(u, v)) ++cnt[labels[u]];
        }
        if (cnt[0] >= cnt[1] && cnt[0] > 0)
            CHECK(out[v] == 0);
        else if (cnt[1] > cnt[0])
            CHECK(out[v] == 1);
    }
}

TEST_CASE("intersection core labels equal core-only labels at the same seed") {
    auto p = test::random_params(2, 70, 19);
    auto g = sample_adjacency(p, 8, false);
    auto spec = AlgorithmSpec::parse("dscore");
    auto with = run_intersection_attach(g, 2, spec, 31);
    auto core_only = run_core_only(g, 2, spec, 31);
    CHECK(with.core.members() == core_only.core.members());
    for (NodeId v : with.core.members())
        CHECK(with.labels[v] == core_only.labels[v]);
    CHECK(core_only.attached.empty());
    CHECK(with.attached.size() == 70 - with.core.size());
    for (NodeId v : with.attached.members()) CHECK_FALSE(with.core.contains(v));
}

TEST_CASE("full core makes intersection_attach equal run_entire") {
    // dense sampling: every node ends up in both product components
    auto p = test::random_params(2, 40, 23);
    p.B.setConstant(0.9);
    p.B(0, 0) = 1.0;
    p.B(1, 1) = 1.0;
    p.theta.setConstant(0.9);
    p.delta.setConstant(0.9);
    auto g = sample_adjacency(p, 3);
    auto spec = AlgorithmSpec::parse("opca");
    auto inter = run_intersection_attach(g, 2, spec, 11);
    REQUIRE(inter.core.size() == 40);
    auto entire = run_entire(g, 2, spec, 11);
    CHECK(inter.labels == entire.labels);
}

TEST_CASE("intersection core smaller than K is a numerical error") {
    DirectedGraph g(4, {{0, 1}, {2, 3}});  // products have no edges at all
    CHECK_THROWS_AS(
        run_intersection_attach(g, 2, AlgorithmSpec::parse("opca"), 1),
        NumericalError);
}

TEST_CASE("AlgorithmSpec parse and name round-trip") {
    for (const char* s : {"dscore", "rdscore", "dscore2", "dscore3", "rdscore2",
                          "opca", "rpca"}) {
        auto spec = AlgorithmSpec::parse(s);
        CHECK(spec.name() == s);
        CHECK(AlgorithmSpec::parse(spec.name()).name() == spec.name());
    }
    CHECK(AlgorithmSpec::parse("dscoreq").q == 2);
    CHECK(AlgorithmSpec::parse("DSCORE").family == AlgorithmFamily::dscore);
    CHECK(AlgorithmSpec::parse("rdscore").regularized);
    CHECK_FALSE(AlgorithmSpec::parse("dscore").regularized);
    CHECK(AlgorithmSpec::parse("pca").family == AlgorithmFamily::opca);
    CHECK_THROWS_AS(AlgorithmSpec::parse("banana"), ValidationError);
    CHECK_THROWS_AS(AlgorithmSpec::parse("dscore0"), ValidationError);
}

TEST_CASE("pipeline K validation") {
    auto g = two_cliques(5);
    CHECK_THROWS_AS(run_entire(g, 0, AlgorithmSpec::parse("opca"), 1),
                    ValidationError);
    CHECK_THROWS_AS(run_entire(g, 1, AlgorithmSpec::parse("dscore"), 1),
                    ValidationError);
    run_entire(g, 1, AlgorithmSpec::parse("opca"), 1);  // oPCA allows K = 1
}
