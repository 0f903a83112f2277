#include "netprof/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "netprof/correlation.hpp"
#include "netprof/distributions.hpp"
#include "netprof/graph.hpp"
#include "netprof/graph_export.hpp"
#include "netprof/metrics.hpp"
#include "netprof/report.hpp"
#include "netprof/svg_plot.hpp"
#include "netprof/synth.hpp"

namespace netprof::cli {

namespace {

namespace fs = std::filesystem;

struct SharedFlags {
    std::string format = "tsv";
    bool reverse_direction = false;
};

FormatOptions to_format_options(const SharedFlags& shared) {
    FormatOptions options;
    if (shared.format == "tsv") options.separator = FieldSeparator::Tab;
    else if (shared.format == "csv") options.separator = FieldSeparator::Comma;
    else options.separator = FieldSeparator::Whitespace;
    options.reverse_direction = shared.reverse_direction;
    return options;
}

void add_shared_flags(CLI::App* cmd, SharedFlags& shared) {
    cmd->add_option("--format", shared.format, "edge-list field separator")
        ->check(CLI::IsMember({"tsv", "csv", "ws"}))
        ->capture_default_str();
    cmd->add_flag("--reverse-direction", shared.reverse_direction,
                  "input lines are recorded target-first");
}

DirectedGraph load_graph(const std::string& path, const SharedFlags& shared, LoadSummary& summary,
                         std::ostream& err) {
    std::ifstream input(path);
    if (!input.is_open()) throw std::runtime_error("cannot open '" + path + "'");
    DirectedGraph graph = load_edge_list(input, to_format_options(shared), &summary);
    err << "loaded " << summary.nodes << " nodes, " << summary.edges
        << " edges (duplicates dropped: " << summary.duplicates_dropped
        << ", self-loops rejected: " << summary.self_loops_rejected << ")\n";
    return graph;
}

std::optional<std::uint32_t> parse_kmin(const std::string& text) {
    if (text == "auto") return std::nullopt;
    int value = std::stoi(text);
    if (value < 1) throw CLI::ValidationError("--kmin", "must be 'auto' or a positive integer");
    return static_cast<std::uint32_t>(value);
}

std::pair<std::uint32_t, std::uint32_t> parse_filter_special(const std::string& text) {
    std::size_t comma = text.find(',');
    if (comma == std::string::npos)
        throw CLI::ValidationError("--filter-special", "expected OUTMAX,INMIN");
    return {static_cast<std::uint32_t>(std::stoul(text.substr(0, comma))),
            static_cast<std::uint32_t>(std::stoul(text.substr(comma + 1)))};
}

std::string fixed3(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.3f", v);
    return buf;
}

std::string general(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

void write_file(const fs::path& path, const std::string& contents) {
    std::ofstream output(path, std::ios::binary);
    if (!output.is_open()) throw std::runtime_error("cannot write '" + path.string() + "'");
    output << contents;
}

int cmd_stats(const std::string& input, const SharedFlags& shared, PathMode path_mode,
              bool exclude_low_degree, std::ostream& out, std::ostream& err) {
    LoadSummary summary;
    DirectedGraph graph = load_graph(input, shared, summary, err);
    SummaryStats stats = summary_stats(graph, path_mode, {exclude_low_degree});
    out << "N=" << stats.n << " L=" << stats.l << " <k>=" << fixed3(stats.avg_degree)
        << " C=" << fixed3(stats.clustering) << " l=" << fixed3(stats.path_length)
        << " H=" << fixed3(stats.hierarchy) << "\n";
    return 0;
}

int cmd_analyze(const std::string& input, const SharedFlags& shared,
                const AnalyzeOptions& options, const std::string& out_dir, std::ostream& out,
                std::ostream& err) {
    LoadSummary summary;
    DirectedGraph graph = load_graph(input, shared, summary, err);
    NetworkReport report = analyze_network(graph, input, summary, options);

    fs::path dir(out_dir);
    fs::create_directories(dir);
    write_file(dir / "report.json", report_to_json(report).dump(2) + "\n");

    DegreeSequence seq_in = in_degree_sequence(graph);
    DegreeSequence seq_out = out_degree_sequence(graph);
    std::optional<Ccdf> ccdf_in, ccdf_out;
    try {
        ccdf_in = ccdf(seq_in, options.convention);
        std::ostringstream text;
        write_ccdf(*ccdf_in, text);
        write_file(dir / "ccdf_in.tsv", text.str());
    } catch (const std::exception& e) {
        err << "ccdf_in skipped: " << e.what() << "\n";
    }
    try {
        ccdf_out = ccdf(seq_out, options.convention);
        std::ostringstream text;
        write_ccdf(*ccdf_out, text);
        write_file(dir / "ccdf_out.tsv", text.str());
    } catch (const std::exception& e) {
        err << "ccdf_out skipped: " << e.what() << "\n";
    }
    if (ccdf_in && ccdf_out) {
        std::ostringstream svg;
        write_ccdf_figure(*ccdf_in, *ccdf_out,
                          report.fit_in ? &*report.fit_in : nullptr,
                          report.fit_out ? &*report.fit_out : nullptr,
                          report.crossing ? &*report.crossing : nullptr, svg);
        write_file(dir / "figure_ccdf.svg", svg.str());
    }
    {
        auto records = degrees(graph);
        std::ostringstream svg;
        write_scatter_figure(records,
                             report.correlation_raw ? &*report.correlation_raw : nullptr, svg);
        write_file(dir / "figure_scatter.svg", svg.str());
    }

    if (report.stats)
        out << "N=" << report.stats->n << " L=" << report.stats->l
            << " <k>=" << fixed3(report.stats->avg_degree)
            << " C=" << fixed3(report.stats->clustering)
            << " l=" << fixed3(report.stats->path_length)
            << " H=" << fixed3(report.stats->hierarchy) << "\n";
    out << "asymmetry: " << to_string(report.asymmetry);
    if (report.crossing && report.crossing->k_star)
        out << ", crossing k* = " << general(*report.crossing->k_star);
    if (report.cutoff_in && report.cutoff_in->k_plus)
        out << ", in-degree cutoff k+ = " << *report.cutoff_in->k_plus;
    out << "\n";
    out << "report: " << (dir / "report.json").string() << "\n";
    if (report.degraded()) {
        err << "partial report: some stages unavailable\n";
        return 1;
    }
    return 0;
}

int cmd_generate(const GeneratorSpec& spec, const std::string& out_file, std::ostream& out) {
    ConfigModelStats stats;
    DirectedGraph graph = generate_asymmetric_network(spec, &stats);

    std::vector<std::string> header;
    {
        std::ostringstream line;
        line << "generated by netprof generate";
        header.push_back(line.str());
    }
    {
        std::ostringstream line;
        line << "n=" << spec.n << " gamma_in=" << general(spec.gamma_in)
             << " gamma_out=" << general(spec.gamma_out) << " k_min_in=" << spec.k_min_in
             << " k_min_out=" << spec.k_min_out << " cutoff_in="
             << (spec.cutoff_in ? std::to_string(*spec.cutoff_in) : "none") << " cutoff_out="
             << (spec.cutoff_out ? std::to_string(*spec.cutoff_out) : "none")
             << " seed=" << spec.seed;
        header.push_back(line.str());
    }
    {
        std::ostringstream line;
        line << "nodes=" << graph.node_count() << " edges=" << graph.edge_count()
             << " stubs=" << stats.requested_edges
             << " self_loops_dropped=" << stats.self_loops_dropped
             << " duplicates_dropped=" << stats.duplicates_dropped;
        header.push_back(line.str());
    }

    std::ostringstream text;
    write_edge_list(graph, text, header);
    if (out_file.empty()) {
        out << text.str();
    } else {
        write_file(out_file, text.str());
        out << "wrote " << graph.node_count() << " nodes, " << graph.edge_count() << " edges to "
            << out_file << "\n";
    }
    return 0;
}

int cmd_export(const std::string& input, const SharedFlags& shared, const std::string& to,
               const std::string& out_file, std::ostream& out, std::ostream& err) {
    LoadSummary summary;
    DirectedGraph graph = load_graph(input, shared, summary, err);
    ExportFormat format = to == "dot" ? ExportFormat::Dot : ExportFormat::GraphML;
    std::ostringstream text;
    export_graph(graph, format, text);
    if (out_file.empty()) out << text.str();
    else {
        write_file(out_file, text.str());
        out << "wrote " << out_file << "\n";
    }
    return 0;
}

int cmd_correlate(const std::string& input, const SharedFlags& shared, std::uint32_t out_max,
                  std::uint32_t in_min, bool freeze, const std::string& scatter_file,
                  const std::string& svg_file, std::ostream& out, std::ostream& err) {
    LoadSummary summary;
    DirectedGraph graph = load_graph(input, shared, summary, err);
    FilteredCorrelation corr = filtered_correlation(graph, out_max, in_min, freeze);
    out << "raw: R^2=" << general(corr.raw.r2) << " r=" << general(corr.raw.pearson_r)
        << " slope=" << general(corr.raw.slope) << " n=" << corr.raw.n_points << "\n";
    if (corr.filtered)
        out << "filtered: R^2=" << general(corr.filtered->r2)
            << " r=" << general(corr.filtered->pearson_r) << " slope="
            << general(corr.filtered->slope) << " n=" << corr.filtered->n_points << "\n";
    else
        out << "filtered: absent (" << corr.filtered_absent_reason << ")\n";
    out << "special nodes (k_out<=" << out_max << ", k_in>" << in_min
        << "): " << corr.special_nodes.size() << "\n";
    for (const auto& rec : corr.special_nodes)
        out << "  " << graph.label(rec.node) << " k_in=" << rec.k_in << " k_out=" << rec.k_out
            << "\n";

    if (!scatter_file.empty()) {
        std::ostringstream text;
        text << "# scatter label k_in k_out\n";
        for (const auto& rec : degrees(graph))
            text << graph.label(rec.node) << '\t' << rec.k_in << '\t' << rec.k_out << '\n';
        write_file(scatter_file, text.str());
    }
    if (!svg_file.empty()) {
        auto records = degrees(graph);
        std::ostringstream svg;
        write_scatter_figure(records, &corr.raw, svg);
        write_file(svg_file, svg.str());
    }
    return corr.filtered || corr.special_nodes.empty() ? 0 : 1;
}

int cmd_fit(const std::string& input, const SharedFlags& shared, const std::string& direction,
            const std::string& kmin_text, std::optional<std::uint32_t> kmax, double tau,
            bool strict_ccdf, std::ostream& out, std::ostream& err) {
    LoadSummary summary;
    DirectedGraph graph = load_graph(input, shared, summary, err);
    DegreeSequence seq =
        direction == "in" ? in_degree_sequence(graph) : out_degree_sequence(graph);
    std::optional<std::uint32_t> k_min = parse_kmin(kmin_text);
    PowerLawFit fit;
    CutoffResult cutoff;
    if (kmax) {
        std::uint32_t chosen = k_min ? *k_min : select_k_min(seq);
        fit = fit_power_law(seq, chosen, kmax);
        cutoff = detect_cutoff(seq, fit, tau);
    } else {
        RegimeAnalysis regime = regime_fit(seq, tau, k_min);
        fit = regime.fit;
        cutoff = regime.cutoff;
    }
    Ccdf curve = ccdf(seq, strict_ccdf ? CcdfConvention::StrictlyGreater
                                       : CcdfConvention::GreaterEqual);
    out << "direction=" << direction << " n=" << seq.size() << " k_min=" << fit.k_min
        << (k_min ? "" : " (auto)") << " n_tail=" << fit.n_tail << "\n";
    out << "gamma_mle=" << general(fit.gamma_mle)
        << " gamma_mle_approx=" << general(fit.gamma_mle_approx)
        << " gamma_ols=" << general(fit.gamma_ols) << " ks=" << general(fit.ks_distance) << "\n";
    out << "ccdf points=" << curve.points.size() << " max_k=" << curve.max_k() << "\n";
    if (cutoff.k_plus)
        out << "cutoff k+=" << *cutoff.k_plus << " departure=" << general(cutoff.departure_decades)
            << " decades\n";
    else
        out << "cutoff absent (max departure " << general(cutoff.departure_decades)
            << " decades)\n";
    return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"directed-network topology profiler"};
    app.name("netprof");
    app.require_subcommand(1);

    // stats
    SharedFlags stats_shared;
    std::string stats_input;
    std::string stats_path_mode = "undirected";
    bool stats_exclude_low_degree = false;
    auto* stats_cmd = app.add_subcommand("stats", "summary statistics (N, L, <k>, C, l, H)");
    stats_cmd->add_option("input", stats_input, "edge-list file")->required();
    add_shared_flags(stats_cmd, stats_shared);
    stats_cmd->add_option("--path-mode", stats_path_mode, "path-length mode")
        ->check(CLI::IsMember({"undirected", "directed"}))
        ->capture_default_str();
    stats_cmd->add_flag("--clustering-exclude-low-degree", stats_exclude_low_degree,
                        "exclude nodes with projected degree < 2 from the clustering average");

    // analyze
    SharedFlags analyze_shared;
    std::string analyze_input, analyze_out = "netprof-report";
    std::string analyze_path_mode = "undirected";
    std::string analyze_kmin = "auto";
    std::string analyze_filter_special = "0,50";
    double analyze_tau = 0.5;
    bool analyze_freeze = false, analyze_strict = false, analyze_exclude_low = false;
    auto* analyze_cmd = app.add_subcommand("analyze", "full distribution/correlation report");
    analyze_cmd->add_option("input", analyze_input, "edge-list file")->required();
    add_shared_flags(analyze_cmd, analyze_shared);
    analyze_cmd->add_option("--out", analyze_out, "output directory")->capture_default_str();
    analyze_cmd->add_option("--tau", analyze_tau, "cutoff threshold in decades")
        ->capture_default_str();
    analyze_cmd->add_option("--kmin", analyze_kmin, "fit lower bound: auto or integer")
        ->capture_default_str();
    analyze_cmd->add_option("--path-mode", analyze_path_mode, "path-length mode")
        ->check(CLI::IsMember({"undirected", "directed"}))
        ->capture_default_str();
    analyze_cmd->add_option("--filter-special", analyze_filter_special,
                            "special-node rule OUTMAX,INMIN")
        ->capture_default_str();
    analyze_cmd->add_flag("--freeze-degrees", analyze_freeze,
                          "keep pre-removal degrees in the filtered correlation");
    analyze_cmd->add_flag("--ccdf-strict", analyze_strict, "use Pr(K > k) instead of Pr(K >= k)");
    analyze_cmd->add_flag("--clustering-exclude-low-degree", analyze_exclude_low,
                          "exclude nodes with projected degree < 2 from the clustering average");

    // generate
    GeneratorSpec gen_spec;
    gen_spec.n = 1000;
    std::string gen_out;
    std::optional<std::int64_t> gen_cutoff_in, gen_cutoff_out;
    auto* gen_cmd = app.add_subcommand("generate", "synthesize a network with power-law degrees");
    gen_cmd->add_option("--n", gen_spec.n, "node count")->capture_default_str();
    gen_cmd->add_option("--gamma-in", gen_spec.gamma_in, "in-degree exponent (> 1)")
        ->capture_default_str();
    gen_cmd->add_option("--gamma-out", gen_spec.gamma_out, "out-degree exponent (> 1)")
        ->capture_default_str();
    gen_cmd->add_option("--kmin-in", gen_spec.k_min_in, "in-degree floor")->capture_default_str();
    gen_cmd->add_option("--kmin-out", gen_spec.k_min_out, "out-degree floor")
        ->capture_default_str();
    gen_cmd->add_option("--cutoff-in", gen_cutoff_in, "in-degree truncation bound");
    gen_cmd->add_option("--cutoff-out", gen_cutoff_out, "out-degree truncation bound");
    gen_cmd->add_option("--seed", gen_spec.seed, "generator seed")->capture_default_str();
    gen_cmd->add_option("--out", gen_out, "output edge-list file (default stdout)");

    // export
    SharedFlags export_shared;
    std::string export_input, export_to = "dot", export_out;
    auto* export_cmd = app.add_subcommand("export", "graph with cycle members highlighted");
    export_cmd->add_option("input", export_input, "edge-list file")->required();
    add_shared_flags(export_cmd, export_shared);
    export_cmd->add_option("--to", export_to, "output format")
        ->check(CLI::IsMember({"dot", "graphml"}))
        ->capture_default_str();
    export_cmd->add_option("--out", export_out, "output file (default stdout)");

    // correlate
    SharedFlags corr_shared;
    std::string corr_input, corr_filter = "0,50", corr_scatter, corr_svg;
    bool corr_freeze = false;
    auto* corr_cmd = app.add_subcommand("correlate", "in/out degree correlation");
    corr_cmd->add_option("input", corr_input, "edge-list file")->required();
    add_shared_flags(corr_cmd, corr_shared);
    corr_cmd->add_option("--filter-special", corr_filter, "special-node rule OUTMAX,INMIN")
        ->capture_default_str();
    corr_cmd->add_flag("--freeze-degrees", corr_freeze,
                       "keep pre-removal degrees in the filtered correlation");
    corr_cmd->add_option("--scatter", corr_scatter, "write label/k_in/k_out scatter data");
    corr_cmd->add_option("--svg", corr_svg, "write scatter figure");

    // fit
    SharedFlags fit_shared;
    std::string fit_input, fit_direction = "in", fit_kmin = "auto";
    std::optional<std::int64_t> fit_kmax;
    double fit_tau = 0.5;
    bool fit_strict = false;
    auto* fit_cmd = app.add_subcommand("fit", "power-law fit for one direction");
    fit_cmd->add_option("input", fit_input, "edge-list file")->required();
    add_shared_flags(fit_cmd, fit_shared);
    fit_cmd->add_option("--direction", fit_direction, "degree direction")
        ->check(CLI::IsMember({"in", "out"}))
        ->capture_default_str();
    fit_cmd->add_option("--kmin", fit_kmin, "fit lower bound: auto or integer")
        ->capture_default_str();
    fit_cmd->add_option("--kmax", fit_kmax, "fit upper bound");
    fit_cmd->add_option("--tau", fit_tau, "cutoff threshold in decades")->capture_default_str();
    fit_cmd->add_flag("--ccdf-strict", fit_strict, "use Pr(K > k) instead of Pr(K >= k)");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (stats_cmd->parsed()) {
            PathMode mode =
                stats_path_mode == "directed" ? PathMode::Directed : PathMode::Undirected;
            return cmd_stats(stats_input, stats_shared, mode, stats_exclude_low_degree, out, err);
        }
        if (analyze_cmd->parsed()) {
            AnalyzeOptions options;
            options.tau = analyze_tau;
            options.k_min = parse_kmin(analyze_kmin);
            options.path_mode =
                analyze_path_mode == "directed" ? PathMode::Directed : PathMode::Undirected;
            options.clustering.exclude_low_degree = analyze_exclude_low;
            options.convention = analyze_strict ? CcdfConvention::StrictlyGreater
                                                : CcdfConvention::GreaterEqual;
            auto [out_max, in_min] = parse_filter_special(analyze_filter_special);
            options.special_out_max = out_max;
            options.special_in_min = in_min;
            options.freeze_degrees = analyze_freeze;
            return cmd_analyze(analyze_input, analyze_shared, options, analyze_out, out, err);
        }
        if (gen_cmd->parsed()) {
            if (gen_cutoff_in) {
                if (*gen_cutoff_in < 1) throw std::invalid_argument("cutoff must be >= 1");
                gen_spec.cutoff_in = static_cast<std::uint32_t>(*gen_cutoff_in);
            }
            if (gen_cutoff_out) {
                if (*gen_cutoff_out < 1) throw std::invalid_argument("cutoff must be >= 1");
                gen_spec.cutoff_out = static_cast<std::uint32_t>(*gen_cutoff_out);
            }
            return cmd_generate(gen_spec, gen_out, out);
        }
        if (export_cmd->parsed())
            return cmd_export(export_input, export_shared, export_to, export_out, out, err);
        if (corr_cmd->parsed()) {
            auto [out_max, in_min] = parse_filter_special(corr_filter);
            return cmd_correlate(corr_input, corr_shared, out_max, in_min, corr_freeze,
                                 corr_scatter, corr_svg, out, err);
        }
        if (fit_cmd->parsed()) {
            std::optional<std::uint32_t> kmax;
            if (fit_kmax) {
                if (*fit_kmax < 1) throw std::invalid_argument("kmax must be >= 1");
                kmax = static_cast<std::uint32_t>(*fit_kmax);
            }
            return cmd_fit(fit_input, fit_shared, fit_direction, fit_kmin, kmax, fit_tau,
                           fit_strict, out, err);
        }
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    err << "error: no subcommand\n";
    return 2;
}

}  // namespace netprof::cli
