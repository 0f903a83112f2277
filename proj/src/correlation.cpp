#include "netprof/correlation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace netprof {

CorrelationResult correlate(std::span<const DegreeRecord> records) {
    if (records.size() < 3) throw std::runtime_error("degenerate scatter: fewer than 3 points");
    const double n = static_cast<double>(records.size());
    double sx = 0.0, sy = 0.0;
    for (const auto& rec : records) {
        sx += rec.k_in;
        sy += rec.k_out;
    }
    const double mx = sx / n, my = sy / n;
    double sxx = 0.0, syy = 0.0, sxy = 0.0;
    for (const auto& rec : records) {
        double dx = static_cast<double>(rec.k_in) - mx;
        double dy = static_cast<double>(rec.k_out) - my;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    if (sxx == 0.0 || syy == 0.0) throw std::runtime_error("degenerate scatter: zero variance");

    CorrelationResult result;
    result.n_points = records.size();
    result.pearson_r = sxy / std::sqrt(sxx * syy);
    result.r2 = result.pearson_r * result.pearson_r;
    result.slope = sxy / sxx;
    result.intercept = my - result.slope * mx;
    return result;
}

CorrelationResult degree_correlation(const DirectedGraph& graph) {
    auto records = degrees(graph);
    return correlate(records);
}

std::vector<DegreeRecord> find_special_nodes(const DirectedGraph& graph, std::uint32_t out_max,
                                             std::uint32_t in_min_exclusive) {
    std::vector<DegreeRecord> special;
    for (const auto& rec : degrees(graph))
        if (rec.k_out <= out_max && rec.k_in > in_min_exclusive) special.push_back(rec);
    std::sort(special.begin(), special.end(), [](const DegreeRecord& a, const DegreeRecord& b) {
        if (a.k_in != b.k_in) return a.k_in > b.k_in;
        return a.node < b.node;
    });
    return special;
}

FilteredCorrelation filtered_correlation(const DirectedGraph& graph, std::uint32_t out_max,
                                         std::uint32_t in_min_exclusive, bool freeze_degrees) {
    FilteredCorrelation result;
    result.raw = degree_correlation(graph);
    result.special_nodes = find_special_nodes(graph, out_max, in_min_exclusive);
    if (result.special_nodes.empty()) {
        result.filtered = result.raw;
        return result;
    }

    try {
        if (freeze_degrees) {
            std::vector<bool> is_special(graph.node_count(), false);
            for (const auto& rec : result.special_nodes) is_special[rec.node] = true;
            std::vector<DegreeRecord> kept;
            for (const auto& rec : degrees(graph))
                if (!is_special[rec.node]) kept.push_back(rec);
            result.filtered = correlate(kept);
        } else {
            DirectedGraph filtered = filter_nodes(graph, [&](const DegreeRecord& rec) {
                return rec.k_out <= out_max && rec.k_in > in_min_exclusive;
            });
            result.filtered = degree_correlation(filtered);
        }
    } catch (const std::runtime_error& e) {
        result.filtered_absent_reason = e.what();
    }
    return result;
}

}  // namespace netprof
