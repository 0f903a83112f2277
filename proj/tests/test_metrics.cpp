#include <doctest.h>

#include <cstdio>
#include <random>
#include <sstream>
#include <stdexcept>

#include "netprof/graph.hpp"
#include "netprof/metrics.hpp"
#include "oracles.hpp"

using namespace netprof;

namespace {

DirectedGraph from_pairs(std::size_t n, std::vector<std::pair<NodeId, NodeId>> pairs) {
    return DirectedGraph::from_edges(n, pairs);
}

}  // namespace

TEST_CASE("scc_decompose on hand graphs") {
    // DAG: 3 singleton components.
    DirectedGraph dag = from_pairs(3, {{0, 1}, {1, 2}});
    SccPartition p1 = scc_decompose(dag);
    CHECK(p1.component_count() == 3);

    // 3-cycle: one component of size 3.
    DirectedGraph cycle = from_pairs(3, {{0, 1}, {1, 2}, {2, 0}});
    SccPartition p2 = scc_decompose(cycle);
    CHECK(p2.component_count() == 1);
    CHECK(p2.component_sizes[0] == 3);

    // {a->b, b->a, b->c}: components {a,b} and {c}.
    DirectedGraph mixed = from_pairs(3, {{0, 1}, {1, 0}, {1, 2}});
    SccPartition p3 = scc_decompose(mixed);
    CHECK(p3.component_count() == 2);
    CHECK(p3.component_of[0] == p3.component_of[1]);
    CHECK(p3.component_of[0] != p3.component_of[2]);
}

TEST_CASE("cycle_members") {
    DirectedGraph dag = from_pairs(4, {{0, 1}, {1, 2}, {2, 3}});
    CHECK(cycle_members(dag).empty());

    // 3-cycle plus pendant d.
    DirectedGraph pendant = from_pairs(4, {{0, 1}, {1, 2}, {2, 0}, {2, 3}});
    CHECK(cycle_members(pendant) == std::vector<NodeId>{0, 1, 2});

    // Two disjoint 2-cycles: all four nodes.
    DirectedGraph two = from_pairs(4, {{0, 1}, {1, 0}, {2, 3}, {3, 2}});
    CHECK(cycle_members(two).size() == 4);
}

TEST_CASE("hierarchy_degree hand values") {
    DirectedGraph dag = from_pairs(4, {{0, 1}, {1, 2}, {0, 3}});
    CHECK(hierarchy_degree(dag) == 1.0);

    DirectedGraph cycle = from_pairs(3, {{0, 1}, {1, 2}, {2, 0}});
    CHECK(hierarchy_degree(cycle) == 0.0);

    // {a->b, b->c, c->a, c->d, d->e}: cycle edges are exactly the first
    // three, so H = 2/5.
    DirectedGraph mixed = from_pairs(5, {{0, 1}, {1, 2}, {2, 0}, {2, 3}, {3, 4}});
    CHECK(hierarchy_degree(mixed) == doctest::Approx(0.4).epsilon(1e-15));

    DirectedGraph empty = DirectedGraph::from_edges(3, {});
    CHECK_THROWS_WITH_AS(hierarchy_degree(empty), "undefined on edgeless graph",
                         std::runtime_error);
}

TEST_CASE("hierarchy oracle equivalence on random small digraphs") {
    std::mt19937_64 gen(2024);
    for (int trial = 0; trial < 120; ++trial) {
        DirectedGraph g = oracles::random_digraph(gen, 2, 10, 0.25);
        if (g.edge_count() == 0) continue;
        auto flags = oracles::cycle_edge_flags_bruteforce(g);
        SccPartition sccs = scc_decompose(g);
        auto edges = g.edges();
        for (std::size_t e = 0; e < edges.size(); ++e) {
            bool scc_flag = sccs.component_of[edges[e].first] == sccs.component_of[edges[e].second];
            CHECK(scc_flag == flags[e]);
        }
    }
}

TEST_CASE("hierarchy invariant under node relabeling") {
    std::mt19937_64 gen(5);
    for (int trial = 0; trial < 30; ++trial) {
        DirectedGraph g = oracles::random_digraph(gen, 3, 12, 0.3);
        if (g.edge_count() == 0) continue;
        double h = hierarchy_degree(g);

        std::vector<NodeId> perm(g.node_count());
        for (NodeId v = 0; v < perm.size(); ++v) perm[v] = v;
        for (std::size_t i = perm.size(); i > 1; --i) std::swap(perm[i - 1], perm[gen() % i]);
        std::vector<std::pair<NodeId, NodeId>> remapped;
        for (auto [u, v] : g.edges()) remapped.emplace_back(perm[u], perm[v]);
        DirectedGraph relabeled = DirectedGraph::from_edges(g.node_count(), remapped);
        CHECK(hierarchy_degree(relabeled) == h);
    }
}

TEST_CASE("closing a cycle strictly lowers H; cross-component edges do not") {
    // Chain 0 -> 1 -> 2 -> 3, H = 1.
    DirectedGraph chain = from_pairs(4, {{0, 1}, {1, 2}, {2, 3}});
    CHECK(hierarchy_degree(chain) == 1.0);

    // Feedback edge 3 -> 0 closes a cycle: H drops strictly.
    DirectedGraph closed = from_pairs(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
    CHECK(hierarchy_degree(closed) < 1.0);

    // An extra forward edge between distinct components keeps every edge
    // acyclic.
    DirectedGraph forward = from_pairs(4, {{0, 1}, {1, 2}, {2, 3}, {0, 2}});
    CHECK(hierarchy_degree(forward) == 1.0);
    SccPartition sccs = scc_decompose(forward);
    CHECK(sccs.component_count() == 4);
}

TEST_CASE("clustering_coefficient hand values") {
    DirectedGraph triangle = from_pairs(3, {{0, 1}, {1, 2}, {2, 0}});
    CHECK(clustering_coefficient(triangle) == 1.0);

    DirectedGraph star = from_pairs(4, {{0, 1}, {0, 2}, {0, 3}});
    CHECK(clustering_coefficient(star) == 0.0);

    // Triangle {a,b,c} plus pendant edge a->d: (1/3 + 1 + 1 + 0)/4 = 7/12.
    DirectedGraph pendant = from_pairs(4, {{0, 1}, {1, 2}, {2, 0}, {0, 3}});
    CHECK(clustering_coefficient(pendant) == doctest::Approx(7.0 / 12.0).epsilon(1e-15));

    // Excluding low-degree nodes changes the denominator: (1/3 + 1 + 1)/3.
    CHECK(clustering_coefficient(pendant, {true}) ==
          doctest::Approx((1.0 / 3.0 + 2.0) / 3.0).epsilon(1e-15));
}

TEST_CASE("clustering matches triple-loop counting on random graphs") {
    std::mt19937_64 gen(11);
    for (int trial = 0; trial < 60; ++trial) {
        DirectedGraph g = oracles::random_digraph(gen, 2, 8, 0.35);
        CHECK(clustering_coefficient(g) == oracles::clustering_bruteforce(g));
    }
}

TEST_CASE("avg_shortest_path hand values") {
    DirectedGraph path = from_pairs(3, {{0, 1}, {1, 2}});
    PathLengthResult undirected = avg_shortest_path(path, PathMode::Undirected);
    CHECK(undirected.mean_distance == doctest::Approx(4.0 / 3.0).epsilon(1e-15));
    CHECK(undirected.reachable_pairs == 6);
    CHECK(undirected.unreachable_pairs == 0);

    PathLengthResult directed = avg_shortest_path(path, PathMode::Directed);
    CHECK(directed.mean_distance == doctest::Approx(4.0 / 3.0).epsilon(1e-15));
    CHECK(directed.reachable_pairs == 3);
    CHECK(directed.unreachable_pairs == 3);

    // Complete bidirectional graph on 4 nodes: every pair adjacent.
    std::vector<std::pair<NodeId, NodeId>> complete;
    for (NodeId u = 0; u < 4; ++u)
        for (NodeId v = 0; v < 4; ++v)
            if (u != v) complete.emplace_back(u, v);
    DirectedGraph k4 = from_pairs(4, complete);
    CHECK(avg_shortest_path(k4, PathMode::Directed).mean_distance == 1.0);
    CHECK(avg_shortest_path(k4, PathMode::Undirected).mean_distance == 1.0);

    DirectedGraph isolated = DirectedGraph::from_edges(3, {});
    CHECK_THROWS_WITH_AS(avg_shortest_path(isolated, PathMode::Undirected), "no paths",
                         std::runtime_error);
}

TEST_CASE("avg_shortest_path matches Floyd-Warshall on random graphs") {
    std::mt19937_64 gen(13);
    for (int trial = 0; trial < 60; ++trial) {
        DirectedGraph g = oracles::random_digraph(gen, 2, 8, 0.3);
        for (PathMode mode : {PathMode::Undirected, PathMode::Directed}) {
            auto oracle = oracles::mean_distance_floyd(g, mode);
            if (!oracle.any) {
                CHECK_THROWS_AS(avg_shortest_path(g, mode), std::runtime_error);
                continue;
            }
            PathLengthResult result = avg_shortest_path(g, mode);
            CHECK(result.mean_distance == oracle.mean);
            CHECK(result.reachable_pairs == oracle.reachable);
        }
    }
}

TEST_CASE("avg_shortest_path is deterministic across thread counts") {
    std::mt19937_64 gen(17);
    DirectedGraph g = oracles::random_digraph(gen, 300, 400, 0.01);
    if (g.edge_count() == 0) return;
    PathLengthResult one = avg_shortest_path(g, PathMode::Undirected, 1);
    PathLengthResult four = avg_shortest_path(g, PathMode::Undirected, 4);
    CHECK(one.mean_distance == four.mean_distance);
    CHECK(one.reachable_pairs == four.reachable_pairs);
}

TEST_CASE("summary_stats bundles the battery") {
    DirectedGraph cycle = from_pairs(3, {{0, 1}, {1, 2}, {2, 0}});
    SummaryStats stats = summary_stats(cycle);
    CHECK(stats.n == 3);
    CHECK(stats.l == 3);
    CHECK(stats.avg_degree == 1.0);
    CHECK(stats.clustering == 1.0);
    CHECK(stats.path_length == 1.0);
    CHECK(stats.hierarchy == 0.0);
}

TEST_CASE("average degree is exactly L/N at reference sizes") {
    // Circulant constructions hit exact (N, L) pairs.
    auto circulant = [](std::size_t n, std::size_t l) {
        std::vector<std::pair<NodeId, NodeId>> edges;
        std::size_t offset = 1;
        while (edges.size() < l) {
            for (std::size_t i = 0; i < n && edges.size() < l; ++i)
                edges.emplace_back(static_cast<NodeId>(i),
                                   static_cast<NodeId>((i + offset) % n));
            ++offset;
        }
        return DirectedGraph::from_edges(n, edges);
    };
    struct Row {
        std::size_t n, l;
        double avg;
    };
    for (const Row& row : {Row{356, 1480, 4.157}, Row{679, 2437, 3.589}, Row{627, 2175, 3.469},
                           Row{227, 648, 2.855}}) {
        DirectedGraph g = circulant(row.n, row.l);
        REQUIRE(g.node_count() == row.n);
        REQUIRE(g.edge_count() == row.l);
        SummaryStats stats = summary_stats(g);
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.3f", stats.avg_degree);
        char expect[32];
        std::snprintf(expect, sizeof(expect), "%.3f", row.avg);
        CHECK(std::string(buf) == std::string(expect));
    }
}
