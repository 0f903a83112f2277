#pragma once
// The full per-network analysis bundle and its structured JSON form.
// Every stage is either present or explicitly absent with a reason, so
// downstream scripts never confuse 0 with missing. Field names here fix
// the report schema.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "netprof/correlation.hpp"
#include "netprof/distributions.hpp"
#include "netprof/graph.hpp"
#include "netprof/metrics.hpp"

namespace netprof {

struct SpecialNodeEntry {
    std::string label;
    std::uint32_t k_in = 0;
    std::uint32_t k_out = 0;
};

struct NetworkReport {
    std::string source_path;
    LoadSummary load;

    std::optional<SummaryStats> stats;
    std::string stats_error;

    std::optional<PowerLawFit> fit_in;
    std::string fit_in_error;
    std::optional<PowerLawFit> fit_out;
    std::string fit_out_error;

    std::optional<CrossingResult> crossing;
    std::string crossing_error;

    std::optional<CutoffResult> cutoff_in;
    std::string cutoff_in_error;
    std::optional<CutoffResult> cutoff_out;
    std::string cutoff_out_error;

    std::optional<CorrelationResult> correlation_raw;
    std::string correlation_raw_error;
    std::optional<CorrelationResult> correlation_filtered;
    std::string correlation_filtered_error;

    std::vector<SpecialNodeEntry> special_nodes;
    std::size_t cycle_node_count = 0;
    AsymmetryDirection asymmetry = AsymmetryDirection::None;

    bool degraded() const;
};

struct AnalyzeOptions {
    double tau = 0.5;
    std::optional<std::uint32_t> k_min;  // empty = auto-select
    PathMode path_mode = PathMode::Undirected;
    ClusteringOptions clustering;
    CcdfConvention convention = CcdfConvention::GreaterEqual;
    std::uint32_t special_out_max = 0;
    std::uint32_t special_in_min = 50;
    bool freeze_degrees = false;
};

// Runs the whole pipeline; stage failures are recorded in the report
// instead of propagating.
NetworkReport analyze_network(const DirectedGraph& graph, const std::string& source_path,
                              const LoadSummary& load, const AnalyzeOptions& options = {});

nlohmann::json report_to_json(const NetworkReport& report);
NetworkReport report_from_json(const nlohmann::json& j);

}  // namespace netprof
