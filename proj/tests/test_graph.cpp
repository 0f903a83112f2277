#include <doctest.h>

#include <algorithm>
#include <random>
#include <sstream>
#include <stdexcept>

#include "netprof/graph.hpp"

using namespace netprof;

namespace {

DirectedGraph load_text(const std::string& text, const FormatOptions& options = {},
                        LoadSummary* summary = nullptr) {
    std::istringstream input(text);
    return load_edge_list(input, options, summary);
}

}  // namespace

TEST_CASE("load_edge_list basic construction") {
    LoadSummary summary;
    DirectedGraph g = load_text("a\tb\nb\tc", {}, &summary);
    CHECK(g.node_count() == 3);
    CHECK(g.edge_count() == 2);
    CHECK(summary.nodes == 3);
    CHECK(summary.edges == 2);
    CHECK(summary.duplicates_dropped == 0);
    CHECK(summary.self_loops_rejected == 0);
    CHECK(g.label(0) == "a");
    CHECK(g.has_edge(0, 1));
    CHECK(!g.has_edge(1, 0));
}

TEST_CASE("load_edge_list drops duplicates") {
    LoadSummary summary;
    DirectedGraph g = load_text("a\tb\na\tb", {}, &summary);
    CHECK(g.node_count() == 2);
    CHECK(g.edge_count() == 1);
    CHECK(summary.duplicates_dropped == 1);
}

TEST_CASE("load_edge_list rejects self-loops") {
    LoadSummary summary;
    DirectedGraph g = load_text("a\ta\nb\tc", {}, &summary);
    CHECK(g.node_count() == 2);
    CHECK(g.edge_count() == 1);
    CHECK(summary.self_loops_rejected == 1);
}

TEST_CASE("load_edge_list error paths") {
    CHECK_THROWS_WITH_AS(load_text(""), "no edges", std::runtime_error);
    CHECK_THROWS_WITH_AS(load_text("# only a comment\n\n"), "no edges", std::runtime_error);
    CHECK_THROWS_AS(load_text("justonefield"), std::runtime_error);
    try {
        load_text("a\tb\nmalformed_line\nb\tc");
        FAIL("expected parse error");
    } catch (const std::runtime_error& e) {
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
}

TEST_CASE("load_edge_list separators and label trimming") {
    DirectedGraph csv = load_text("a,b\nb,c", {FieldSeparator::Comma, false});
    CHECK(csv.edge_count() == 2);

    DirectedGraph ws = load_text("a b\n b   c ", {FieldSeparator::Whitespace, false});
    CHECK(ws.edge_count() == 2);
    CHECK(ws.node_count() == 3);

    // Tab-separated labels may contain spaces; surrounding whitespace trims.
    DirectedGraph spaced = load_text(" Acme Motors \tBolt Works\n");
    CHECK(spaced.node_count() == 2);
    CHECK(spaced.label(0) == "Acme Motors");
    CHECK(spaced.label(1) == "Bolt Works");

    // Comments and blank lines are skipped.
    DirectedGraph commented = load_text("# head\n\na\tb\n  # indented comment\nb\tc\n");
    CHECK(commented.edge_count() == 2);
}

TEST_CASE("load_edge_list reverse direction flag") {
    DirectedGraph g = load_text("customer\tsupplier", {FieldSeparator::Tab, true});
    NodeId supplier = g.label(0) == "supplier" ? 0 : 1;
    NodeId customer = 1 - supplier;
    CHECK(g.has_edge(supplier, customer));
    CHECK(!g.has_edge(customer, supplier));
}

TEST_CASE("degrees covers stars, cycles, isolated nodes") {
    DirectedGraph star = load_text("a\tb\na\tc");
    auto star_records = degrees(star);
    REQUIRE(star_records.size() == 3);
    CHECK(star_records[0].k_in == 0);
    CHECK(star_records[0].k_out == 2);
    CHECK(star_records[1].k_in == 1);
    CHECK(star_records[1].k_out == 0);
    CHECK(star_records[2].k_in == 1);
    CHECK(star_records[2].k_out == 0);

    DirectedGraph cycle = load_text("a\tb\nb\tc\nc\ta");
    for (const auto& rec : degrees(cycle)) {
        CHECK(rec.k_in == 1);
        CHECK(rec.k_out == 1);
    }

    DirectedGraph isolated = DirectedGraph::from_edges(3, {});
    for (const auto& rec : degrees(isolated)) {
        CHECK(rec.k_in == 0);
        CHECK(rec.k_out == 0);
    }
}

TEST_CASE("degree conservation and adjacency consistency") {
    std::mt19937_64 gen(7);
    for (int trial = 0; trial < 50; ++trial) {
        std::size_t n = 2 + gen() % 30;
        std::vector<std::pair<NodeId, NodeId>> edges;
        for (std::size_t i = 0; i < 3 * n; ++i)
            edges.emplace_back(static_cast<NodeId>(gen() % n), static_cast<NodeId>(gen() % n));
        DirectedGraph g = DirectedGraph::from_edges(n, edges);
        std::size_t sum_in = 0, sum_out = 0;
        for (const auto& rec : degrees(g)) {
            sum_in += rec.k_in;
            sum_out += rec.k_out;
        }
        CHECK(sum_in == g.edge_count());
        CHECK(sum_out == g.edge_count());

        // Forward and reverse adjacency describe the same edge set.
        std::vector<std::pair<NodeId, NodeId>> via_pred;
        for (NodeId v = 0; v < g.node_count(); ++v)
            for (NodeId u : g.predecessors(v)) via_pred.emplace_back(u, v);
        std::sort(via_pred.begin(), via_pred.end());
        CHECK(via_pred == g.edges());
    }
}

TEST_CASE("filter_nodes boundary behavior") {
    // Node X: k_out = 0, k_in = 60 -> removed; Y: k_in = 50 -> retained.
    std::vector<std::pair<std::string, std::string>> edges;
    for (int i = 0; i < 60; ++i) edges.emplace_back("s" + std::to_string(i), "X");
    for (int i = 0; i < 50; ++i) edges.emplace_back("t" + std::to_string(i), "Y");
    DirectedGraph g = DirectedGraph::from_labeled_edges(edges);

    auto rule = [](const DegreeRecord& rec) { return rec.k_out == 0 && rec.k_in > 50; };
    DirectedGraph filtered = filter_nodes(g, rule);
    CHECK(filtered.node_count() == g.node_count() - 1);
    for (NodeId v = 0; v < filtered.node_count(); ++v) CHECK(filtered.label(v) != "X");
    bool has_y = false;
    for (NodeId v = 0; v < filtered.node_count(); ++v) has_y |= filtered.label(v) == "Y";
    CHECK(has_y);
}

TEST_CASE("filter_nodes identity and empty-graph error") {
    DirectedGraph g = load_text("a\tb\nb\tc\nc\ta");
    DirectedGraph same = filter_nodes(g, [](const DegreeRecord&) { return false; });
    CHECK(same.node_count() == g.node_count());
    CHECK(same.edge_count() == g.edge_count());
    CHECK(same.edges() == g.edges());

    CHECK_THROWS_WITH_AS(filter_nodes(g, [](const DegreeRecord&) { return true; }), "empty graph",
                         std::runtime_error);
}

TEST_CASE("edge-list round trip preserves the edge set") {
    std::mt19937_64 gen(99);
    for (int trial = 0; trial < 20; ++trial) {
        std::size_t n = 2 + gen() % 20;
        std::vector<std::pair<NodeId, NodeId>> edges;
        for (std::size_t i = 0; i < 2 * n; ++i)
            edges.emplace_back(static_cast<NodeId>(gen() % n), static_cast<NodeId>(gen() % n));
        DirectedGraph g = DirectedGraph::from_edges(n, edges);
        if (g.edge_count() == 0) continue;

        std::ostringstream text;
        write_edge_list(g, text, {"round trip"});
        std::istringstream back(text.str());
        DirectedGraph reloaded = load_edge_list(back);

        REQUIRE(reloaded.edge_count() == g.edge_count());
        auto original = g.edges();
        std::vector<std::pair<std::string, std::string>> original_labeled, reloaded_labeled;
        for (auto [u, v] : original) original_labeled.emplace_back(g.label(u), g.label(v));
        for (auto [u, v] : reloaded.edges())
            reloaded_labeled.emplace_back(reloaded.label(u), reloaded.label(v));
        std::sort(original_labeled.begin(), original_labeled.end());
        std::sort(reloaded_labeled.begin(), reloaded_labeled.end());
        CHECK(original_labeled == reloaded_labeled);
    }
}
