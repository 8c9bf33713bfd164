#include "dcd/graph.hpp"

#include <algorithm>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

namespace dcd {

NodeSet::NodeSet(std::vector<NodeId> members, NodeId n) {
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    if (!members.empty() && (members.front() < 0 || members.back() >= n))
        throw ValidationError("NodeSet member out of range");
    bitmap_.assign(static_cast<std::size_t>(n), 0);
    for (NodeId v : members) bitmap_[v] = 1;
    members_ = std::move(members);
}

NodeSet NodeSet::full(NodeId n) {
    std::vector<NodeId> all(static_cast<std::size_t>(n));
    std::iota(all.begin(), all.end(), NodeId{0});
    return NodeSet(std::move(all), n);
}

NodeSet NodeSet::intersect(const NodeSet& other) const {
    std::vector<NodeId> out;
    for (NodeId v : members_)
        if (other.contains(v)) out.push_back(v);
    return NodeSet(std::move(out), universe());
}

DirectedGraph::DirectedGraph(NodeId n,
                             std::vector<std::pair<NodeId, NodeId>> edges)
    : n_(n), out_(n), in_(n) {
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    for (auto [src, dst] : edges) {
        if (src < 0 || src >= n || dst < 0 || dst >= n)
            throw ValidationError("edge endpoint out of range");
        out_[src].push_back(dst);
        in_[dst].push_back(src);
    }
    for (auto& v : in_) std::sort(v.begin(), v.end());
    num_edges_ = edges.size();
}

bool DirectedGraph::has_edge(NodeId src, NodeId dst) const {
    const auto& nb = out_[src];
    return std::binary_search(nb.begin(), nb.end(), dst);
}

std::vector<std::pair<NodeId, NodeId>> DirectedGraph::edge_list() const {
    std::vector<std::pair<NodeId, NodeId>> edges;
    edges.reserve(num_edges_);
    for (NodeId i = 0; i < n_; ++i)
        for (NodeId j : out_[i]) edges.emplace_back(i, j);
    return edges;
}

DirectedGraph DirectedGraph::transposed() const {
    std::vector<std::pair<NodeId, NodeId>> edges;
    edges.reserve(num_edges_);
    for (NodeId i = 0; i < n_; ++i)
        for (NodeId j : out_[i]) edges.emplace_back(j, i);
    return DirectedGraph(n_, std::move(edges));
}

DirectedGraph from_edge_list(std::istream& text, int base,
                             bool drop_self_loops) {
    std::vector<std::pair<NodeId, NodeId>> edges;
    std::string line;
    std::size_t line_no = 0;
    NodeId max_id = -1;
    while (std::getline(text, line)) {
        ++line_no;
        std::size_t first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        std::istringstream ls(line);
        long long a, b;
        if (!(ls >> a >> b))
            throw ParseError("malformed edge at line " + std::to_string(line_no));
        std::string trailing;
        a -= base;
        b -= base;
        if (a < 0 || b < 0)
            throw ParseError("negative node id after rebasing at line " +
                             std::to_string(line_no));
        if (drop_self_loops && a == b) continue;
        edges.emplace_back(static_cast<NodeId>(a), static_cast<NodeId>(b));
        max_id = std::max({max_id, static_cast<NodeId>(a), static_cast<NodeId>(b)});
    }
    return DirectedGraph(max_id + 1, std::move(edges));
}

void to_edge_list(const DirectedGraph& g, std::ostream& out, int base) {
    for (auto [src, dst] : g.edge_list())
        out << (src + base) << ' ' << (dst + base) << '\n';
}

std::vector<int> read_label_file(std::istream& text, int base, NodeId n) {
    std::vector<int> labels(static_cast<std::size_t>(n), -1);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(text, line)) {
        ++line_no;
        std::size_t first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        std::istringstream ls(line);
        long long id, lab;
        if (!(ls >> id >> lab))
            throw ParseError("malformed label at line " + std::to_string(line_no));
        id -= base;
        if (id < 0 || id >= n)
            throw ParseError("node id out of range at line " +
                             std::to_string(line_no));
        labels[static_cast<std::size_t>(id)] = static_cast<int>(lab);
    }
    return labels;
}

namespace {

class UnionFind {
public:
    explicit UnionFind(std::size_t n) : parent_(n), rank_(n, 0) {
        std::iota(parent_.begin(), parent_.end(), NodeId{0});
    }
    NodeId find(NodeId x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }
    void unite(NodeId a, NodeId b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (rank_[a] < rank_[b]) std::swap(a, b);
        parent_[b] = a;
        if (rank_[a] == rank_[b]) ++rank_[a];
    }

private:
    std::vector<NodeId> parent_;
    std::vector<std::uint8_t> rank_;
};

// Largest component by size; ties by smallest contained node id, which is
// the smallest root-representative's earliest member because we scan ids in
// order.
NodeSet extract_largest(UnionFind& uf, NodeId n) {
    std::vector<std::int64_t> count(static_cast<std::size_t>(n), 0);
    for (NodeId v = 0; v < n; ++v) ++count[uf.find(v)];
    // Scanning v in ascending order visits each component first at its
    // smallest member, so "first strict improvement" realizes the tie-break.
    std::vector<std::uint8_t> seen(static_cast<std::size_t>(n), 0);
    NodeId best_root = 0;
    std::int64_t best_size = -1;
    for (NodeId v = 0; v < n; ++v) {
        NodeId r = uf.find(v);
        if (seen[r]) continue;
        seen[r] = 1;
        if (count[r] > best_size) {
            best_size = count[r];
            best_root = r;
        }
    }
    std::vector<NodeId> members;
    members.reserve(static_cast<std::size_t>(best_size));
    for (NodeId v = 0; v < n; ++v)
        if (uf.find(v) == best_root) members.push_back(v);
    return NodeSet(std::move(members), n);
}

}  // namespace

NodeSet largest_weak_component(const DirectedGraph& g) {
    const NodeId n = g.num_nodes();
    if (n < 1) throw ValidationError("empty graph");
    UnionFind uf(static_cast<std::size_t>(n));
    for (NodeId i = 0; i < n; ++i)
        for (NodeId j : g.out_neighbors(i)) uf.unite(i, j);
    return extract_largest(uf, n);
}

NodeSet product_component(const DirectedGraph& g, ProductSide side) {
    const NodeId n = g.num_nodes();
    if (n < 1) throw ValidationError("empty graph");
    // (A A^T)(i,k) > 0 iff i and k share an out-neighbor: union every
    // in-neighbor list of each node j (left side). Never materializes the
    // product; O(sum_j d_in(j)) unions.
    UnionFind uf(static_cast<std::size_t>(n));
    for (NodeId j = 0; j < n; ++j) {
        const auto& group = (side == ProductSide::left) ? g.in_neighbors(j)
                                                        : g.out_neighbors(j);
        for (std::size_t t = 1; t < group.size(); ++t)
            uf.unite(group[0], group[t]);
    }
    return extract_largest(uf, n);
}

Subgraph induced_subgraph(const DirectedGraph& g, const NodeSet& s) {
    if (s.empty()) throw ValidationError("induced_subgraph: empty node set");
    Subgraph sub;
    sub.to_old = s.members();
    for (std::size_t i = 0; i < sub.to_old.size(); ++i)
        sub.to_new[sub.to_old[i]] = static_cast<NodeId>(i);
    std::vector<std::pair<NodeId, NodeId>> edges;
    for (NodeId old_src : sub.to_old)
        for (NodeId old_dst : g.out_neighbors(old_src))
            if (s.contains(old_dst))
                edges.emplace_back(sub.to_new[old_src], sub.to_new[old_dst]);
    sub.graph = DirectedGraph(static_cast<NodeId>(sub.to_old.size()),
                              std::move(edges));
    return sub;
}

Degrees degrees(const DirectedGraph& g) {
    const NodeId n = g.num_nodes();
    Degrees d;
    d.out.resize(static_cast<std::size_t>(n));
    d.in.resize(static_cast<std::size_t>(n));
    for (NodeId v = 0; v < n; ++v) {
        d.out[v] = static_cast<std::int64_t>(g.out_neighbors(v).size());
        d.in[v] = static_cast<std::int64_t>(g.in_neighbors(v).size());
    }
    return d;
}

}  // namespace dcd
