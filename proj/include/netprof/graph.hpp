#pragma once
// Immutable simple digraph with labeled nodes and adjacency in both
// directions. Graphs are built once (from an edge list or generator) and
// all queries are read-only, so they can be shared across threads.

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace netprof {

using NodeId = std::uint32_t;

struct DegreeRecord {
    NodeId node = 0;
    std::uint32_t k_in = 0;
    std::uint32_t k_out = 0;
};

// What the loader saw: kept counts plus what was dropped and why.
struct LoadSummary {
    std::size_t nodes = 0;
    std::size_t edges = 0;
    std::size_t duplicates_dropped = 0;
    std::size_t self_loops_rejected = 0;
};

enum class FieldSeparator { Tab, Comma, Whitespace };

struct FormatOptions {
    FieldSeparator separator = FieldSeparator::Tab;
    // Datasets recorded customer-first can be flipped back to
    // supplier -> customer at load time.
    bool reverse_direction = false;
};

class DirectedGraph {
public:
    // Builds from (source label, target label) pairs. Labels are trimmed,
    // ids assigned in first-appearance order. Self-loops are rejected and
    // duplicate edges collapsed; both are counted in the summary.
    static DirectedGraph from_labeled_edges(
        const std::vector<std::pair<std::string, std::string>>& edges,
        LoadSummary* summary = nullptr);

    // Builds on n nodes labeled "0".."n-1" from integer edge pairs.
    // Same self-loop / duplicate policy as above.
    static DirectedGraph from_edges(std::size_t n,
                                    std::span<const std::pair<NodeId, NodeId>> edges,
                                    LoadSummary* summary = nullptr);

    // Explicit node set (labels must be unique) plus integer edges. Nodes
    // without incident edges are kept.
    static DirectedGraph with_labels(std::vector<std::string> labels,
                                     std::span<const std::pair<NodeId, NodeId>> edges,
                                     LoadSummary* summary = nullptr);

    std::size_t node_count() const { return out_.size(); }
    std::size_t edge_count() const { return edge_count_; }

    const std::string& label(NodeId v) const { return labels_[v]; }

    // Neighbor lists are sorted ascending.
    std::span<const NodeId> successors(NodeId v) const { return out_[v]; }
    std::span<const NodeId> predecessors(NodeId v) const { return in_[v]; }

    std::size_t out_degree(NodeId v) const { return out_[v].size(); }
    std::size_t in_degree(NodeId v) const { return in_[v].size(); }

    bool has_edge(NodeId source, NodeId target) const;

    // Every edge as (source, target), ordered by source then target.
    std::vector<std::pair<NodeId, NodeId>> edges() const;

private:
    DirectedGraph() = default;

    std::vector<std::string> labels_;
    std::vector<std::vector<NodeId>> out_;
    std::vector<std::vector<NodeId>> in_;
    std::size_t edge_count_ = 0;
};

// Parses "source<sep>target" lines; '#' starts a comment line, blank lines
// are skipped. Throws std::runtime_error with the line number on malformed
// input and on empty input ("no edges").
DirectedGraph load_edge_list(std::istream& input, const FormatOptions& options = {},
                             LoadSummary* summary = nullptr);

// Writes the graph back as tab-separated label pairs, one edge per line,
// optionally preceded by "# " comment lines. Reloading the output yields
// an identical edge set.
void write_edge_list(const DirectedGraph& graph, std::ostream& output,
                     const std::vector<std::string>& header_comments = {});

// One record per node, in id order.
std::vector<DegreeRecord> degrees(const DirectedGraph& graph);

// Induced subgraph on the nodes for which `remove` is false. Ids are
// re-densified, labels preserved. Throws if every node is removed.
DirectedGraph filter_nodes(const DirectedGraph& graph,
                           const std::function<bool(const DegreeRecord&)>& remove);

}  // namespace netprof
