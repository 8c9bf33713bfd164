#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace dcd {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

using NodeId = std::int32_t;

// Sorted, deduplicated node set with O(1) membership lookup.
class NodeSet {
public:
    NodeSet() = default;
    NodeSet(std::vector<NodeId> members, NodeId n);

    const std::vector<NodeId>& members() const { return members_; }
    bool contains(NodeId v) const {
        return v >= 0 && v < static_cast<NodeId>(bitmap_.size()) && bitmap_[v];
    }
    std::size_t size() const { return members_.size(); }
    bool empty() const { return members_.empty(); }
    NodeId universe() const { return static_cast<NodeId>(bitmap_.size()); }

    static NodeSet full(NodeId n);
    NodeSet intersect(const NodeSet& other) const;

private:
    std::vector<NodeId> members_;
    std::vector<std::uint8_t> bitmap_;
};

// Immutable sparse directed graph over n nodes; adjacency stored both ways
// for O(deg) iteration over out- and in-neighbors.
class DirectedGraph {
public:
    DirectedGraph() = default;
    // edges may contain duplicates; they are collapsed.
    DirectedGraph(NodeId n, std::vector<std::pair<NodeId, NodeId>> edges);

    NodeId num_nodes() const { return n_; }
    std::size_t num_edges() const { return num_edges_; }
    const std::vector<NodeId>& out_neighbors(NodeId v) const { return out_[v]; }
    const std::vector<NodeId>& in_neighbors(NodeId v) const { return in_[v]; }
    bool has_edge(NodeId src, NodeId dst) const;

    std::vector<std::pair<NodeId, NodeId>> edge_list() const;
    DirectedGraph transposed() const;

private:
    NodeId n_ = 0;
    std::size_t num_edges_ = 0;
    std::vector<std::vector<NodeId>> out_;
    std::vector<std::vector<NodeId>> in_;
};

enum class ProductSide { left, right };  // left: A A^T, right: A^T A

DirectedGraph from_edge_list(std::istream& text, int base = 0,
                             bool drop_self_loops = true);
void to_edge_list(const DirectedGraph& g, std::ostream& out, int base = 0);

// Node labels, one `node_id label` pair per line; same base convention.
std::vector<int> read_label_file(std::istream& text, int base, NodeId n);

NodeSet largest_weak_component(const DirectedGraph& g);

// Largest connected component of the nonzero pattern of A A^T (left: nodes
// sharing an out-neighbor) or A^T A (right: shared in-neighbor). Diagonal
// entries are ignored; ties broken by smallest contained node id.
NodeSet product_component(const DirectedGraph& g, ProductSide side);

struct Subgraph {
    DirectedGraph graph;
    std::vector<NodeId> to_old;                    // new id -> old id
    std::unordered_map<NodeId, NodeId> to_new;     // old id -> new id
};

Subgraph induced_subgraph(const DirectedGraph& g, const NodeSet& s);

struct Degrees {
    std::vector<std::int64_t> out;
    std::vector<std::int64_t> in;
};

Degrees degrees(const DirectedGraph& g);

}  // namespace dcd
