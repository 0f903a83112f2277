#include "netprof/report.hpp"

#include <stdexcept>

namespace netprof {

using nlohmann::json;

bool NetworkReport::degraded() const {
    return !(stats_error.empty() && fit_in_error.empty() && fit_out_error.empty() &&
             crossing_error.empty() && cutoff_in_error.empty() && cutoff_out_error.empty() &&
             correlation_raw_error.empty() && correlation_filtered_error.empty());
}

NetworkReport analyze_network(const DirectedGraph& graph, const std::string& source_path,
                              const LoadSummary& load, const AnalyzeOptions& options) {
    NetworkReport report;
    report.source_path = source_path;
    report.load = load;

    auto run_stage = [](std::string& error, auto&& stage) {
        try {
            stage();
        } catch (const std::exception& e) {
            error = e.what();
        }
    };

    run_stage(report.stats_error,
              [&] { report.stats = summary_stats(graph, options.path_mode, options.clustering); });

    DegreeSequence seq_in = in_degree_sequence(graph);
    DegreeSequence seq_out = out_degree_sequence(graph);

    run_stage(report.fit_in_error, [&] {
        RegimeAnalysis in_side = regime_fit(seq_in, options.tau, options.k_min);
        report.fit_in = in_side.fit;
        report.cutoff_in = in_side.cutoff;
    });
    run_stage(report.fit_out_error, [&] {
        RegimeAnalysis out_side = regime_fit(seq_out, options.tau, options.k_min);
        report.fit_out = out_side.fit;
        report.cutoff_out = out_side.cutoff;
    });
    run_stage(report.crossing_error, [&] {
        report.crossing =
            crossing_point(ccdf(seq_in, options.convention), ccdf(seq_out, options.convention));
    });
    if (!report.cutoff_in) report.cutoff_in_error = report.fit_in_error;
    if (!report.cutoff_out) report.cutoff_out_error = report.fit_out_error;
    // Special nodes are reported even when the correlation itself is
    // degenerate.
    for (const auto& rec :
         find_special_nodes(graph, options.special_out_max, options.special_in_min))
        report.special_nodes.push_back({graph.label(rec.node), rec.k_in, rec.k_out});

    run_stage(report.correlation_raw_error, [&] {
        FilteredCorrelation corr = filtered_correlation(graph, options.special_out_max,
                                                        options.special_in_min,
                                                        options.freeze_degrees);
        report.correlation_raw = corr.raw;
        if (corr.filtered) report.correlation_filtered = corr.filtered;
        else report.correlation_filtered_error = corr.filtered_absent_reason;
    });
    if (report.correlation_raw_error.empty() && !report.correlation_filtered &&
        report.correlation_filtered_error.empty()) {
        report.correlation_filtered_error = "not computed";
    }
    if (!report.correlation_raw_error.empty() && report.correlation_filtered_error.empty())
        report.correlation_filtered_error = report.correlation_raw_error;

    report.cycle_node_count = cycle_members(graph).size();

    if (report.fit_in && report.fit_out) {
        double diff = report.fit_out->gamma_ols - report.fit_in->gamma_ols;
        if (diff > kAsymmetryOlsTolerance) report.asymmetry = AsymmetryDirection::OutSteeper;
        else if (diff < -kAsymmetryOlsTolerance) report.asymmetry = AsymmetryDirection::InSteeper;
    }
    return report;
}

namespace {

json absent(const std::string& reason) {
    return json{{"absent", reason.empty() ? "unavailable" : reason}};
}

bool is_absent(const json& j) { return j.is_object() && j.contains("absent"); }

json summary_to_json(const SummaryStats& s) {
    return json{{"n", s.n},
                {"l", s.l},
                {"avg_degree", s.avg_degree},
                {"clustering", s.clustering},
                {"path_length", s.path_length},
                {"hierarchy", s.hierarchy},
                {"unreachable_pairs", s.unreachable_pairs}};
}

SummaryStats summary_from_json(const json& j) {
    SummaryStats s;
    s.n = j.at("n").get<std::size_t>();
    s.l = j.at("l").get<std::size_t>();
    s.avg_degree = j.at("avg_degree").get<double>();
    s.clustering = j.at("clustering").get<double>();
    s.path_length = j.at("path_length").get<double>();
    s.hierarchy = j.at("hierarchy").get<double>();
    s.unreachable_pairs = j.at("unreachable_pairs").get<std::uint64_t>();
    return s;
}

json fit_to_json(const PowerLawFit& f) {
    json j{{"gamma_mle", f.gamma_mle},
           {"gamma_mle_approx", f.gamma_mle_approx},
           {"gamma_ols", f.gamma_ols},
           {"ols_log10_slope", f.ols_log10_slope},
           {"ols_log10_intercept", f.ols_log10_intercept},
           {"k_min", f.k_min},
           {"ks_distance", f.ks_distance},
           {"n_tail", f.n_tail}};
    j["k_max"] = f.k_max ? json(*f.k_max) : absent("unbounded");
    return j;
}

PowerLawFit fit_from_json(const json& j) {
    PowerLawFit f;
    f.gamma_mle = j.at("gamma_mle").get<double>();
    f.gamma_mle_approx = j.at("gamma_mle_approx").get<double>();
    f.gamma_ols = j.at("gamma_ols").get<double>();
    f.ols_log10_slope = j.at("ols_log10_slope").get<double>();
    f.ols_log10_intercept = j.at("ols_log10_intercept").get<double>();
    f.k_min = j.at("k_min").get<std::uint32_t>();
    f.ks_distance = j.at("ks_distance").get<double>();
    f.n_tail = j.at("n_tail").get<std::size_t>();
    if (!is_absent(j.at("k_max"))) f.k_max = j.at("k_max").get<std::uint32_t>();
    return f;
}

json crossing_to_json(const CrossingResult& c) {
    json j;
    j["k_star"] = c.k_star ? json(*c.k_star) : absent("no sign change");
    j["sign_changes"] = c.sign_changes;
    j["bracket"] = c.bracket ? json::array({c.bracket->first, c.bracket->second})
                             : absent("no sign change");
    return j;
}

CrossingResult crossing_from_json(const json& j) {
    CrossingResult c;
    if (!is_absent(j.at("k_star"))) c.k_star = j.at("k_star").get<double>();
    c.sign_changes = j.at("sign_changes").get<int>();
    if (!is_absent(j.at("bracket")))
        c.bracket = {{j.at("bracket")[0].get<std::uint32_t>(),
                      j.at("bracket")[1].get<std::uint32_t>()}};
    return c;
}

json cutoff_to_json(const CutoffResult& c) {
    json j;
    j["k_plus"] = c.k_plus ? json(*c.k_plus) : absent("no persistent departure");
    j["departure_decades"] = c.departure_decades;
    return j;
}

CutoffResult cutoff_from_json(const json& j) {
    CutoffResult c;
    if (!is_absent(j.at("k_plus"))) c.k_plus = j.at("k_plus").get<std::uint32_t>();
    c.departure_decades = j.at("departure_decades").get<double>();
    return c;
}

json correlation_to_json(const CorrelationResult& c) {
    return json{{"r2", c.r2},
                {"pearson_r", c.pearson_r},
                {"slope", c.slope},
                {"intercept", c.intercept},
                {"n_points", c.n_points}};
}

CorrelationResult correlation_from_json(const json& j) {
    CorrelationResult c;
    c.r2 = j.at("r2").get<double>();
    c.pearson_r = j.at("pearson_r").get<double>();
    c.slope = j.at("slope").get<double>();
    c.intercept = j.at("intercept").get<double>();
    c.n_points = j.at("n_points").get<std::size_t>();
    return c;
}

template <typename T, typename ToJson>
json stage_to_json(const std::optional<T>& value, const std::string& error, ToJson&& to) {
    return value ? to(*value) : absent(error);
}

}  // namespace

json report_to_json(const NetworkReport& report) {
    json j;
    j["source"] = {{"path", report.source_path},
                   {"load",
                    {{"nodes", report.load.nodes},
                     {"edges", report.load.edges},
                     {"duplicates_dropped", report.load.duplicates_dropped},
                     {"self_loops_rejected", report.load.self_loops_rejected}}}};
    j["stats"] = stage_to_json(report.stats, report.stats_error, summary_to_json);
    j["fits"] = {{"in", stage_to_json(report.fit_in, report.fit_in_error, fit_to_json)},
                 {"out", stage_to_json(report.fit_out, report.fit_out_error, fit_to_json)}};
    j["crossing"] = stage_to_json(report.crossing, report.crossing_error, crossing_to_json);
    j["cutoffs"] = {
        {"in", stage_to_json(report.cutoff_in, report.cutoff_in_error, cutoff_to_json)},
        {"out", stage_to_json(report.cutoff_out, report.cutoff_out_error, cutoff_to_json)}};
    j["correlation"] = {
        {"raw",
         stage_to_json(report.correlation_raw, report.correlation_raw_error, correlation_to_json)},
        {"filtered", stage_to_json(report.correlation_filtered, report.correlation_filtered_error,
                                   correlation_to_json)}};
    json specials = json::array();
    for (const auto& s : report.special_nodes)
        specials.push_back({{"label", s.label}, {"k_in", s.k_in}, {"k_out", s.k_out}});
    j["special_nodes"] = specials;
    j["cycle_node_count"] = report.cycle_node_count;
    j["asymmetry_direction"] = to_string(report.asymmetry);
    return j;
}

NetworkReport report_from_json(const json& j) {
    NetworkReport report;
    report.source_path = j.at("source").at("path").get<std::string>();
    const json& load = j.at("source").at("load");
    report.load.nodes = load.at("nodes").get<std::size_t>();
    report.load.edges = load.at("edges").get<std::size_t>();
    report.load.duplicates_dropped = load.at("duplicates_dropped").get<std::size_t>();
    report.load.self_loops_rejected = load.at("self_loops_rejected").get<std::size_t>();

    auto stage_from = [&](const json& node, auto& value, std::string& error, auto&& from) {
        if (is_absent(node)) error = node.at("absent").get<std::string>();
        else value = from(node);
    };
    stage_from(j.at("stats"), report.stats, report.stats_error, summary_from_json);
    stage_from(j.at("fits").at("in"), report.fit_in, report.fit_in_error, fit_from_json);
    stage_from(j.at("fits").at("out"), report.fit_out, report.fit_out_error, fit_from_json);
    stage_from(j.at("crossing"), report.crossing, report.crossing_error, crossing_from_json);
    stage_from(j.at("cutoffs").at("in"), report.cutoff_in, report.cutoff_in_error,
               cutoff_from_json);
    stage_from(j.at("cutoffs").at("out"), report.cutoff_out, report.cutoff_out_error,
               cutoff_from_json);
    stage_from(j.at("correlation").at("raw"), report.correlation_raw,
               report.correlation_raw_error, correlation_from_json);
    stage_from(j.at("correlation").at("filtered"), report.correlation_filtered,
               report.correlation_filtered_error, correlation_from_json);
    for (const auto& s : j.at("special_nodes")) {
        report.special_nodes.push_back({s.at("label").get<std::string>(),
                                        s.at("k_in").get<std::uint32_t>(),
                                        s.at("k_out").get<std::uint32_t>()});
    }
    report.cycle_node_count = j.at("cycle_node_count").get<std::size_t>();
    std::string direction = j.at("asymmetry_direction").get<std::string>();
    if (direction == "out_steeper") report.asymmetry = AsymmetryDirection::OutSteeper;
    else if (direction == "in_steeper") report.asymmetry = AsymmetryDirection::InSteeper;
    else report.asymmetry = AsymmetryDirection::None;
    return report;
}

}  // namespace netprof
