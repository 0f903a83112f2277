#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "netprof/cli.hpp"
#include "netprof/graph.hpp"
#include "netprof/graph_export.hpp"
#include "netprof/report.hpp"
#include "netprof/svg_plot.hpp"

using namespace netprof;
namespace fs = std::filesystem;

namespace {

struct CliResult {
    int exit_code = 0;
    std::string out;
    std::string err;
};

CliResult run_cli(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

fs::path test_dir(const std::string& name) {
    fs::path dir = fs::temp_directory_path() / "netprof_tests" / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream output(path, std::ios::binary);
    output << text;
}

std::string read_text(const fs::path& path) {
    std::ifstream input(path, std::ios::binary);
    std::ostringstream buffer;
    buffer << input.rdbuf();
    return buffer.str();
}

// Minimal well-formedness scan: every tag closes, names match, one root.
bool well_formed_xml(const std::string& s) {
    std::vector<std::string> stack;
    std::size_t i = 0;
    bool seen_root = false;
    while (i < s.size()) {
        if (s[i] != '<') {
            ++i;
            continue;
        }
        if (s.compare(i, 2, "<?") == 0) {
            i = s.find("?>", i);
            if (i == std::string::npos) return false;
            i += 2;
            continue;
        }
        bool closing = i + 1 < s.size() && s[i + 1] == '/';
        std::size_t name_begin = i + (closing ? 2 : 1);
        std::size_t name_end = s.find_first_of(" \t\r\n/>", name_begin);
        if (name_end == std::string::npos) return false;
        std::string name = s.substr(name_begin, name_end - name_begin);
        if (name.empty()) return false;
        std::size_t gt = s.find('>', name_begin);
        if (gt == std::string::npos) return false;
        bool self_closing = s[gt - 1] == '/';
        if (closing) {
            if (stack.empty() || stack.back() != name) return false;
            stack.pop_back();
        } else if (!self_closing) {
            if (stack.empty() && seen_root) return false;  // second root
            stack.push_back(name);
            seen_root = true;
        }
        i = gt + 1;
    }
    return stack.empty() && seen_root;
}

}  // namespace

TEST_CASE("cmd_stats prints the aligned battery") {
    fs::path dir = test_dir("stats");
    write_text(dir / "cycle.tsv", "a\tb\nb\tc\nc\ta\n");
    CliResult result = run_cli({"stats", (dir / "cycle.tsv").string()});
    CHECK(result.exit_code == 0);
    CHECK(result.out == "N=3 L=3 <k>=1.000 C=1.000 l=1.000 H=0.000\n");

    write_text(dir / "dag.tsv", "a\tb\nb\tc\n");
    CliResult dag = run_cli({"stats", (dir / "dag.tsv").string()});
    CHECK(dag.exit_code == 0);
    CHECK(dag.out.find("H=1.000") != std::string::npos);
}

TEST_CASE("cmd_stats failure modes exit 2") {
    fs::path dir = test_dir("stats_fail");
    write_text(dir / "empty.tsv", "# nothing here\n");
    CliResult empty = run_cli({"stats", (dir / "empty.tsv").string()});
    CHECK(empty.exit_code == 2);
    CHECK(empty.err.find("no edges") != std::string::npos);

    CliResult missing = run_cli({"stats", (dir / "does_not_exist.tsv").string()});
    CHECK(missing.exit_code == 2);

    CliResult usage = run_cli({"stats"});
    CHECK(usage.exit_code == 2);

    CliResult unknown = run_cli({"frobnicate"});
    CHECK(unknown.exit_code == 2);
}

TEST_CASE("cmd_generate is byte-reproducible and validates flags") {
    fs::path dir = test_dir("generate");
    auto args = [&](const std::string& name, const std::string& seed) {
        return std::vector<std::string>{"generate", "--n",   "300",  "--gamma-in",
                                        "2.5",      "--gamma-out", "2.5", "--seed",
                                        seed,       "--out", (dir / name).string()};
    };
    CHECK(run_cli(args("a.tsv", "7")).exit_code == 0);
    CHECK(run_cli(args("b.tsv", "7")).exit_code == 0);
    CHECK(run_cli(args("c.tsv", "8")).exit_code == 0);
    CHECK(read_text(dir / "a.tsv") == read_text(dir / "b.tsv"));
    CHECK(read_text(dir / "a.tsv") != read_text(dir / "c.tsv"));

    CliResult bad = run_cli({"generate", "--gamma-in", "0.5"});
    CHECK(bad.exit_code == 2);
    CHECK(bad.err.find("gamma") != std::string::npos);
}

TEST_CASE("generate then analyze produces a full report") {
    fs::path dir = test_dir("pipeline");
    fs::path net = dir / "net.tsv";
    CliResult gen = run_cli({"generate", "--n", "2000", "--gamma-in", "1.5", "--cutoff-in", "100",
                             "--gamma-out", "2.2", "--seed", "1", "--out", net.string()});
    REQUIRE(gen.exit_code == 0);

    CliResult analyze =
        run_cli({"analyze", net.string(), "--out", (dir / "report").string()});
    CHECK(analyze.exit_code == 0);
    REQUIRE(fs::exists(dir / "report" / "report.json"));
    REQUIRE(fs::exists(dir / "report" / "ccdf_in.tsv"));
    REQUIRE(fs::exists(dir / "report" / "ccdf_out.tsv"));
    REQUIRE(fs::exists(dir / "report" / "figure_ccdf.svg"));
    REQUIRE(fs::exists(dir / "report" / "figure_scatter.svg"));

    auto j = nlohmann::json::parse(read_text(dir / "report" / "report.json"));
    CHECK(j.at("asymmetry_direction").get<std::string>() == "out_steeper");
    CHECK(!j.at("crossing").contains("absent"));
    double k_star = j.at("crossing").at("k_star").get<double>();
    CHECK(k_star >= 5.0);
    CHECK(k_star <= 20.0);
    CHECK(!j.at("cutoffs").at("in").at("k_plus").is_object());
    CHECK(j.at("cutoffs").at("out").at("k_plus").contains("absent"));

    // The structured report round-trips through the parser.
    NetworkReport parsed = report_from_json(j);
    CHECK(report_to_json(parsed) == j);
    CHECK(report_to_json(parsed).dump(2) == j.dump(2));

    // Figures are well-formed XML.
    CHECK(well_formed_xml(read_text(dir / "report" / "figure_ccdf.svg")));
    CHECK(well_formed_xml(read_text(dir / "report" / "figure_scatter.svg")));
}

TEST_CASE("analyze records stage degradation without dying") {
    fs::path dir = test_dir("degraded");
    // Tiny graph: fits cannot run, stats can.
    write_text(dir / "tiny.tsv", "a\tb\nb\tc\nc\ta\n");
    CliResult result =
        run_cli({"analyze", (dir / "tiny.tsv").string(), "--out", (dir / "rep").string()});
    CHECK(result.exit_code == 1);
    auto j = nlohmann::json::parse(read_text(dir / "rep" / "report.json"));
    CHECK(j.at("fits").at("in").contains("absent"));
    CHECK(!j.at("stats").contains("absent"));
    CHECK(j.at("stats").at("hierarchy").get<double>() == 0.0);
    // Degenerate single-point CCDFs still produce finite figure geometry.
    std::string svg = read_text(dir / "rep" / "figure_ccdf.svg");
    CHECK(well_formed_xml(svg));
    CHECK(svg.find("nan") == std::string::npos);
}

TEST_CASE("cmd_export emits highlighted DOT and GraphML") {
    fs::path dir = test_dir("export");
    write_text(dir / "g.tsv", "a\tb\nb\tc\nc\ta\nc\td\n");

    CliResult dot = run_cli({"export", (dir / "g.tsv").string(), "--to", "dot"});
    CHECK(dot.exit_code == 0);
    CHECK(dot.out.find("digraph") != std::string::npos);
    std::size_t triangles = 0, circles = 0, pos = 0;
    while ((pos = dot.out.find("shape=triangle", pos)) != std::string::npos) {
        ++triangles;
        pos += 1;
    }
    pos = 0;
    while ((pos = dot.out.find("shape=circle", pos)) != std::string::npos) {
        ++circles;
        pos += 1;
    }
    CHECK(triangles == 3);
    CHECK(circles == 1);
    CHECK(dot.out.find("color=blue") != std::string::npos);
    CHECK(dot.out.find("color=red") != std::string::npos);

    CliResult gml = run_cli({"export", (dir / "g.tsv").string(), "--to", "graphml"});
    CHECK(gml.exit_code == 0);
    CHECK(well_formed_xml(gml.out));
    std::size_t nodes = 0, edges2 = 0;
    pos = 0;
    while ((pos = gml.out.find("<node ", pos)) != std::string::npos) {
        ++nodes;
        pos += 1;
    }
    pos = 0;
    while ((pos = gml.out.find("<edge ", pos)) != std::string::npos) {
        ++edges2;
        pos += 1;
    }
    CHECK(nodes == 4);
    CHECK(edges2 == 4);

    CliResult bad = run_cli({"export", (dir / "g.tsv").string(), "--to", "png"});
    CHECK(bad.exit_code == 2);
}

TEST_CASE("DOT quoting survives awkward labels") {
    std::vector<std::pair<std::string, std::string>> edges{{R"(Firm "A")", "B & Co"}};
    DirectedGraph g = DirectedGraph::from_labeled_edges(edges);
    std::ostringstream dot;
    write_dot(g, dot);
    CHECK(dot.str().find(R"("Firm \"A\"")") != std::string::npos);
    std::ostringstream gml;
    write_graphml(g, gml);
    CHECK(gml.str().find("B &amp; Co") != std::string::npos);
    CHECK(well_formed_xml(gml.str()));
}

TEST_CASE("cmd_correlate and cmd_fit run end to end") {
    fs::path dir = test_dir("corr_fit");
    fs::path net = dir / "net.tsv";
    REQUIRE(run_cli({"generate", "--n", "1500", "--gamma-in", "2.5", "--gamma-out", "2.5",
                     "--kmin-in", "1", "--kmin-out", "1", "--seed", "3", "--out", net.string()})
                .exit_code == 0);

    CliResult corr = run_cli({"correlate", net.string(), "--scatter",
                              (dir / "scatter.tsv").string(), "--svg", (dir / "sc.svg").string()});
    CHECK(corr.exit_code == 0);
    CHECK(corr.out.find("raw: R^2=") != std::string::npos);
    CHECK(fs::exists(dir / "scatter.tsv"));
    CHECK(well_formed_xml(read_text(dir / "sc.svg")));

    CliResult fit = run_cli({"fit", net.string(), "--direction", "in"});
    CHECK(fit.exit_code == 0);
    CHECK(fit.out.find("gamma_mle=") != std::string::npos);

    CliResult fit_kmin = run_cli({"fit", net.string(), "--direction", "out", "--kmin", "2"});
    CHECK(fit_kmin.exit_code == 0);
    CHECK(fit_kmin.out.find("k_min=2") != std::string::npos);
}

TEST_CASE("analyze is byte-deterministic for a fixed input") {
    fs::path dir = test_dir("determinism");
    fs::path net = dir / "net.tsv";
    REQUIRE(run_cli({"generate", "--n", "800", "--gamma-in", "2.0", "--gamma-out", "2.6",
                     "--cutoff-in", "60", "--seed", "5", "--out", net.string()})
                .exit_code == 0);
    REQUIRE(run_cli({"analyze", net.string(), "--out", (dir / "r1").string()}).exit_code == 0);
    REQUIRE(run_cli({"analyze", net.string(), "--out", (dir / "r2").string()}).exit_code == 0);
    CHECK(read_text(dir / "r1" / "report.json") == read_text(dir / "r2" / "report.json"));
    CHECK(read_text(dir / "r1" / "ccdf_in.tsv") == read_text(dir / "r2" / "ccdf_in.tsv"));
}

TEST_CASE("loader flags travel through the CLI") {
    fs::path dir = test_dir("loader_flags");
    write_text(dir / "net.csv", "a,b\nb,c\nc,a\n");
    CliResult csv = run_cli({"stats", (dir / "net.csv").string(), "--format", "csv"});
    CHECK(csv.exit_code == 0);
    CHECK(csv.out.find("N=3 L=3") == 0);

    // Reversed recording: c<-b<-a chain reported with H=1 either way, but
    // the reverse flag must flip the special-node classification.
    write_text(dir / "rev.tsv", "hub\ts0\nhub\ts1\nhub\ts2\n");
    CliResult fwd = run_cli({"correlate", (dir / "rev.tsv").string(), "--filter-special", "0,2"});
    CHECK(fwd.out.find("special nodes (k_out<=0, k_in>2): 0") != std::string::npos);
    CliResult rev = run_cli({"correlate", (dir / "rev.tsv").string(), "--filter-special", "0,2",
                             "--reverse-direction"});
    CHECK(rev.out.find("special nodes (k_out<=0, k_in>2): 1") != std::string::npos);
}

TEST_CASE("analyze honors an explicit kmin override") {
    fs::path dir = test_dir("kmin_override");
    fs::path net = dir / "net.tsv";
    REQUIRE(run_cli({"generate", "--n", "1200", "--gamma-in", "2.5", "--gamma-out", "2.5",
                     "--kmin-in", "1", "--kmin-out", "1", "--seed", "9", "--out", net.string()})
                .exit_code == 0);
    REQUIRE(run_cli({"analyze", net.string(), "--out", (dir / "rep").string(), "--kmin", "1"})
                .exit_code == 0);
    auto j = nlohmann::json::parse(read_text(dir / "rep" / "report.json"));
    CHECK(j.at("fits").at("in").at("k_min").get<int>() == 1);
    CHECK(j.at("fits").at("out").at("k_min").get<int>() == 1);

    CliResult bad = run_cli({"analyze", net.string(), "--out", (dir / "rep2").string(), "--kmin",
                             "bogus"});
    CHECK(bad.exit_code == 2);
}

TEST_CASE("export writes to a file when asked") {
    fs::path dir = test_dir("export_out");
    write_text(dir / "g.tsv", "a\tb\nb\ta\n");
    CliResult result = run_cli({"export", (dir / "g.tsv").string(), "--to", "graphml", "--out",
                                (dir / "g.graphml").string()});
    CHECK(result.exit_code == 0);
    CHECK(well_formed_xml(read_text(dir / "g.graphml")));
}
