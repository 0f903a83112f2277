#pragma once
// Whole-network statistics: strongly connected components, cycle
// membership, flow hierarchy, clustering coefficient and characteristic
// path length. Everything here is read-only over an immutable graph.

#include <cstdint>
#include <vector>

#include "netprof/graph.hpp"

namespace netprof {

struct SccPartition {
    std::vector<std::uint32_t> component_of;   // node id -> component index
    std::vector<std::uint32_t> component_sizes;
    std::size_t component_count() const { return component_sizes.size(); }
};

// Iterative Tarjan, linear in N + L.
SccPartition scc_decompose(const DirectedGraph& graph);

// Nodes whose strongly connected component has size >= 2, ascending ids.
// Self-loops are rejected at load, so these are exactly the nodes on some
// directed cycle.
std::vector<NodeId> cycle_members(const DirectedGraph& graph);

// Fraction of edges whose endpoints lie in different strongly connected
// components, i.e. edges on no directed cycle. 1.0 for a DAG, 0.0 for a
// single cycle. Throws on an edgeless graph.
double hierarchy_degree(const DirectedGraph& graph);
double hierarchy_degree(const DirectedGraph& graph, const SccPartition& sccs);

struct ClusteringOptions {
    // Drop nodes with projected degree < 2 from the average instead of
    // counting them as 0.
    bool exclude_low_degree = false;
};

// Watts-Strogatz nodal clustering averaged over nodes, computed on the
// undirected simple projection of the digraph.
double clustering_coefficient(const DirectedGraph& graph, ClusteringOptions options = {});

enum class PathMode { Undirected, Directed };

struct PathLengthResult {
    double mean_distance = 0.0;
    std::uint64_t reachable_pairs = 0;    // ordered pairs u != v with a path
    std::uint64_t unreachable_pairs = 0;  // ordered pairs excluded from the mean
};

// BFS from every node; mean hop count over reachable ordered pairs.
// Per-source sweeps run on `threads` worker threads (0 = hardware default);
// the reduction is integer summation, so the result does not depend on
// scheduling. Throws "no paths" when no pair is reachable.
PathLengthResult avg_shortest_path(const DirectedGraph& graph, PathMode mode,
                                   unsigned threads = 0);

struct SummaryStats {
    std::size_t n = 0;
    std::size_t l = 0;
    double avg_degree = 0.0;   // exactly L / N
    double clustering = 0.0;
    double path_length = 0.0;
    double hierarchy = 0.0;
    std::uint64_t unreachable_pairs = 0;
};

SummaryStats summary_stats(const DirectedGraph& graph, PathMode mode = PathMode::Undirected,
                           ClusteringOptions clustering_options = {});

// Sorted unique union of in- and out-neighbors per node.
std::vector<std::vector<NodeId>> undirected_projection(const DirectedGraph& graph);

}  // namespace netprof
