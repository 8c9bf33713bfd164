#include <doctest.h>

#include <sstream>

#include "dcd/graph.hpp"
#include "dcd/rng.hpp"

using namespace dcd;

namespace {

DirectedGraph random_graph(NodeId n, double p, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<std::pair<NodeId, NodeId>> edges;
    for (NodeId i = 0; i < n; ++i)
        for (NodeId j = 0; j < n; ++j)
            if (i != j && rng.bernoulli(p)) edges.emplace_back(i, j);
    return DirectedGraph(n, std::move(edges));
}

// brute-force union-find over symmetrized edges
NodeSet weak_component_oracle(const DirectedGraph& g) {
    const NodeId n = g.num_nodes();
    std::vector<int> comp(static_cast<std::size_t>(n), -1);
    int next = 0;
    for (NodeId s = 0; s < n; ++s) {
        if (comp[s] >= 0) continue;
        std::vector<NodeId> stack{s};
        comp[s] = next;
        while (!stack.empty()) {
            NodeId v = stack.back();
            stack.pop_back();
            auto visit = [&](NodeId w) {
                if (comp[w] < 0) {
                    comp[w] = next;
                    stack.push_back(w);
                }
            };
            for (NodeId w : g.out_neighbors(v)) visit(w);
            for (NodeId w : g.in_neighbors(v)) visit(w);
        }
        ++next;
    }
    std::vector<std::int64_t> sizes(next, 0);
    for (int c : comp) ++sizes[c];
    int best = 0;
    for (int c = 0; c < next; ++c)
        if (sizes[c] > sizes[best]) best = c;
    std::vector<NodeId> members;
    for (NodeId v = 0; v < n; ++v)
        if (comp[v] == best) members.push_back(v);
    return NodeSet(std::move(members), n);
}

// components of the explicitly computed product's nonzero pattern
NodeSet product_component_oracle(const DirectedGraph& g, ProductSide side) {
    const NodeId n = g.num_nodes();
    std::vector<std::vector<int>> prod(n, std::vector<int>(n, 0));
    for (NodeId i = 0; i < n; ++i)
        for (NodeId k = 0; k < n; ++k)
            for (NodeId j = 0; j < n; ++j) {
                const bool hit = side == ProductSide::left
                                     ? g.has_edge(i, j) && g.has_edge(k, j)
                                     : g.has_edge(j, i) && g.has_edge(j, k);
                if (hit) prod[i][k] = 1;
            }
    std::vector<std::pair<NodeId, NodeId>> und;
    for (NodeId i = 0; i < n; ++i)
        for (NodeId k = 0; k < n; ++k)
            if (i != k && prod[i][k]) {
                und.emplace_back(i, k);
                und.emplace_back(k, i);
            }
    return weak_component_oracle(DirectedGraph(n, std::move(und)));
}

}  // namespace

TEST_CASE("from_edge_list basics") {
    std::istringstream in("0 1\n1 0\n");
    auto g = from_edge_list(in, 0);
    CHECK(g.num_nodes() == 2);
    CHECK(g.num_edges() == 2);
    CHECK(g.has_edge(0, 1));
    CHECK(g.has_edge(1, 0));
}

TEST_CASE("from_edge_list collapses duplicates and rebases") {
    std::istringstream in("1 2\n1 2\n");
    auto g = from_edge_list(in, 1);
    CHECK(g.num_nodes() == 2);
    CHECK(g.num_edges() == 1);
    CHECK(g.has_edge(0, 1));
}

TEST_CASE("from_edge_list skips comments and drops self loops") {
    std::istringstream in("# header\n0 0\n0 1\n");
    auto g = from_edge_list(in, 0, true);
    CHECK(g.num_edges() == 1);
    std::istringstream in2("0 0\n0 1\n");
    auto g2 = from_edge_list(in2, 0, false);
    CHECK(g2.num_edges() == 2);
}

TEST_CASE("from_edge_list errors carry line numbers") {
    std::istringstream bad("0 1\nfoo bar\n");
    CHECK_THROWS_WITH_AS(from_edge_list(bad, 0), "malformed edge at line 2",
                         ParseError);
    std::istringstream neg("1 2\n0 2\n");
    CHECK_THROWS_AS(from_edge_list(neg, 1), ParseError);
}

TEST_CASE("edge list round-trip") {
    auto g = random_graph(20, 0.2, 42);
    std::ostringstream out;
    to_edge_list(g, out, 1);
    std::istringstream in(out.str());
    auto g2 = from_edge_list(in, 1);
    CHECK(g2.edge_list() == g.edge_list());
}

TEST_CASE("largest_weak_component excludes isolated nodes") {
    DirectedGraph g(3, {{0, 1}});
    auto c = largest_weak_component(g);
    CHECK(c.members() == std::vector<NodeId>{0, 1});
}

TEST_CASE("largest_weak_component tie-break picks smallest id") {
    DirectedGraph g(4, {{0, 1}, {1, 0}, {2, 3}, {3, 2}});
    auto c = largest_weak_component(g);
    CHECK(c.contains(0));
    CHECK(c.contains(1));
    CHECK(c.size() == 2);
}

TEST_CASE("largest_weak_component matches union-find oracle") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        auto g = random_graph(50, 0.02, seed);
        auto fast = largest_weak_component(g);
        auto slow = weak_component_oracle(g);
        CHECK(fast.members() == slow.members());
    }
}

TEST_CASE("product_component definition cases") {
    DirectedGraph g(3, {{0, 2}, {1, 2}});
    auto left = product_component(g, ProductSide::left);
    CHECK(left.members() == std::vector<NodeId>{0, 1});
    auto right = product_component(g, ProductSide::right);
    CHECK(right.members() == std::vector<NodeId>{0});
}

TEST_CASE("product_component matches dense product oracle") {
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
        auto g = random_graph(40, 0.05, seed);
        for (auto side : {ProductSide::left, ProductSide::right}) {
            auto fast = product_component(g, side);
            auto slow = product_component_oracle(g, side);
            CHECK(fast.members() == slow.members());
        }
    }
}

TEST_CASE("product_component left equals right on the transpose") {
    for (std::uint64_t seed = 100; seed < 105; ++seed) {
        auto g = random_graph(30, 0.08, seed);
        auto left = product_component(g, ProductSide::left);
        auto right_t = product_component(g.transposed(), ProductSide::right);
        CHECK(left.members() == right_t.members());
    }
}

TEST_CASE("induced_subgraph identity and relabeling") {
    auto g = random_graph(10, 0.3, 7);
    auto full = induced_subgraph(g, NodeSet::full(10));
    CHECK(full.graph.edge_list() == g.edge_list());

    DirectedGraph h(4, {{1, 3}, {0, 2}});
    auto sub = induced_subgraph(h, NodeSet({1, 3}, 4));
    CHECK(sub.graph.num_nodes() == 2);
    CHECK(sub.graph.has_edge(0, 1));
    CHECK(sub.graph.num_edges() == 1);
}

TEST_CASE("induced_subgraph matches brute-force filter") {
    auto g = random_graph(25, 0.15, 9);
    NodeSet s({2, 3, 5, 8, 13, 21}, 25);
    auto sub = induced_subgraph(g, s);
    std::size_t expected = 0;
    for (auto [a, b] : g.edge_list())
        if (s.contains(a) && s.contains(b)) ++expected;
    CHECK(sub.graph.num_edges() == expected);
    // per-node degrees preserved under the index map
    auto deg_sub = degrees(sub.graph);
    for (std::size_t i = 0; i < sub.to_old.size(); ++i) {
        std::int64_t out_in_s = 0;
        for (NodeId j : g.out_neighbors(sub.to_old[i]))
            if (s.contains(j)) ++out_in_s;
        CHECK(deg_sub.out[i] == out_in_s);
    }
    CHECK_THROWS_AS(induced_subgraph(g, NodeSet({}, 25)), ValidationError);
}

TEST_CASE("degrees") {
    DirectedGraph empty(3, {});
    auto d0 = degrees(empty);
    CHECK(d0.out == std::vector<std::int64_t>{0, 0, 0});
    CHECK(d0.in == std::vector<std::int64_t>{0, 0, 0});

    DirectedGraph g(3, {{0, 1}, {0, 2}});
    auto d = degrees(g);
    CHECK(d.out == std::vector<std::int64_t>{2, 0, 0});
    CHECK(d.in == std::vector<std::int64_t>{0, 1, 1});

    auto r = random_graph(30, 0.2, 3);
    auto dr = degrees(r);
    std::int64_t total_out = 0, total_in = 0;
    for (auto v : dr.out) total_out += v;
    for (auto v : dr.in) total_in += v;
    CHECK(total_out == static_cast<std::int64_t>(r.num_edges()));
    CHECK(total_in == static_cast<std::int64_t>(r.num_edges()));
}
