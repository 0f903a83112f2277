#pragma once
// In-degree vs out-degree correlation: least-squares R^2 over the nodal
// degree scatter, plus the sink-hub sensitivity test (remove nodes with
// k_out <= out_max and k_in > in_min and compare).

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "netprof/graph.hpp"

namespace netprof {

struct CorrelationResult {
    double r2 = 0.0;
    double pearson_r = 0.0;
    double slope = 0.0;      // least squares of k_out on k_in
    double intercept = 0.0;
    std::size_t n_points = 0;
};

// Simple least squares of k_out on k_in. Throws "degenerate scatter" when
// either coordinate has zero variance or there are fewer than 3 points.
CorrelationResult correlate(std::span<const DegreeRecord> records);

CorrelationResult degree_correlation(const DirectedGraph& graph);

// Nodes with k_out <= out_max and k_in > in_min_exclusive, sorted by
// descending k_in. Empty is a valid result.
std::vector<DegreeRecord> find_special_nodes(const DirectedGraph& graph,
                                             std::uint32_t out_max = 0,
                                             std::uint32_t in_min_exclusive = 50);

struct FilteredCorrelation {
    CorrelationResult raw;
    std::optional<CorrelationResult> filtered;
    std::string filtered_absent_reason;           // set when filtered is absent
    std::vector<DegreeRecord> special_nodes;      // the removed nodes (pre-removal degrees)
};

// Correlation before and after removing the special nodes. By default the
// degrees are recomputed on the induced subgraph after removal;
// freeze_degrees instead keeps the pre-removal degree records and only
// drops the special rows.
FilteredCorrelation filtered_correlation(const DirectedGraph& graph,
                                         std::uint32_t out_max = 0,
                                         std::uint32_t in_min_exclusive = 50,
                                         bool freeze_degrees = false);

}  // namespace netprof
