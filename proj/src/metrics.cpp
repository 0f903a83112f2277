#include "netprof/metrics.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>
#include <thread>

namespace netprof {

SccPartition scc_decompose(const DirectedGraph& graph) {
    const std::size_t n = graph.node_count();
    constexpr std::uint32_t kUnvisited = 0xffffffffu;

    SccPartition result;
    result.component_of.assign(n, kUnvisited);

    std::vector<std::uint32_t> index(n, kUnvisited);
    std::vector<std::uint32_t> lowlink(n, 0);
    std::vector<bool> on_stack(n, false);
    std::vector<NodeId> stack;
    std::uint32_t next_index = 0;

    // Explicit DFS frames: node plus position within its successor list.
    struct Frame {
        NodeId node;
        std::size_t edge_pos;
    };
    std::vector<Frame> frames;

    for (NodeId root = 0; root < n; ++root) {
        if (index[root] != kUnvisited) continue;
        frames.push_back({root, 0});
        while (!frames.empty()) {
            Frame& f = frames.back();
            NodeId v = f.node;
            if (f.edge_pos == 0) {
                index[v] = lowlink[v] = next_index++;
                stack.push_back(v);
                on_stack[v] = true;
            }
            bool descended = false;
            auto succ = graph.successors(v);
            while (f.edge_pos < succ.size()) {
                NodeId w = succ[f.edge_pos++];
                if (index[w] == kUnvisited) {
                    frames.push_back({w, 0});
                    descended = true;
                    break;
                }
                if (on_stack[w]) lowlink[v] = std::min(lowlink[v], index[w]);
            }
            if (descended) continue;
            if (lowlink[v] == index[v]) {
                std::uint32_t comp = static_cast<std::uint32_t>(result.component_sizes.size());
                std::uint32_t size = 0;
                NodeId w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[w] = false;
                    result.component_of[w] = comp;
                    ++size;
                } while (w != v);
                result.component_sizes.push_back(size);
            }
            frames.pop_back();
            if (!frames.empty()) {
                NodeId parent = frames.back().node;
                lowlink[parent] = std::min(lowlink[parent], lowlink[v]);
            }
        }
    }
    return result;
}

std::vector<NodeId> cycle_members(const DirectedGraph& graph) {
    SccPartition sccs = scc_decompose(graph);
    std::vector<NodeId> members;
    for (NodeId v = 0; v < graph.node_count(); ++v)
        if (sccs.component_sizes[sccs.component_of[v]] >= 2) members.push_back(v);
    return members;
}

double hierarchy_degree(const DirectedGraph& graph, const SccPartition& sccs) {
    if (graph.edge_count() == 0) throw std::runtime_error("undefined on edgeless graph");
    std::size_t acyclic = 0;
    for (NodeId u = 0; u < graph.node_count(); ++u)
        for (NodeId v : graph.successors(u))
            if (sccs.component_of[u] != sccs.component_of[v]) ++acyclic;
    return static_cast<double>(acyclic) / static_cast<double>(graph.edge_count());
}

double hierarchy_degree(const DirectedGraph& graph) {
    return hierarchy_degree(graph, scc_decompose(graph));
}

std::vector<std::vector<NodeId>> undirected_projection(const DirectedGraph& graph) {
    std::vector<std::vector<NodeId>> adj(graph.node_count());
    for (NodeId v = 0; v < graph.node_count(); ++v) {
        auto out = graph.successors(v);
        auto in = graph.predecessors(v);
        adj[v].resize(out.size() + in.size());
        auto end = std::set_union(out.begin(), out.end(), in.begin(), in.end(), adj[v].begin());
        adj[v].erase(end, adj[v].end());
    }
    return adj;
}

double clustering_coefficient(const DirectedGraph& graph, ClusteringOptions options) {
    const std::size_t n = graph.node_count();
    if (n == 0) throw std::invalid_argument("clustering undefined on empty graph");
    auto adj = undirected_projection(graph);

    double sum = 0.0;
    std::size_t counted = 0;
    for (NodeId v = 0; v < n; ++v) {
        const auto& nv = adj[v];
        std::size_t deg = nv.size();
        if (deg < 2) {
            if (!options.exclude_low_degree) ++counted;
            continue;
        }
        // Each projected link among neighbors is found twice by the
        // sorted-list intersections below.
        std::size_t twice_links = 0;
        for (NodeId u : nv) {
            const auto& nu = adj[u];
            std::size_t i = 0, j = 0;
            while (i < nv.size() && j < nu.size()) {
                if (nv[i] < nu[j]) ++i;
                else if (nv[i] > nu[j]) ++j;
                else { ++twice_links; ++i; ++j; }
            }
        }
        std::size_t links = twice_links / 2;
        double possible = static_cast<double>(deg) * static_cast<double>(deg - 1) / 2.0;
        sum += static_cast<double>(links) / possible;
        ++counted;
    }
    if (counted == 0) return 0.0;
    return sum / static_cast<double>(counted);
}

namespace {

// Distance sum and reachable-pair count for BFS sweeps from sources in
// [begin, end).
struct SweepTotals {
    std::uint64_t distance_sum = 0;
    std::uint64_t reachable = 0;
};

SweepTotals bfs_range(const std::vector<std::vector<NodeId>>& adj, NodeId begin, NodeId end) {
    const std::size_t n = adj.size();
    SweepTotals totals;
    std::vector<std::uint32_t> dist(n);
    std::vector<NodeId> queue(n);
    for (NodeId s = begin; s < end; ++s) {
        std::fill(dist.begin(), dist.end(), 0xffffffffu);
        dist[s] = 0;
        std::size_t head = 0, tail = 0;
        queue[tail++] = s;
        while (head < tail) {
            NodeId v = queue[head++];
            for (NodeId w : adj[v]) {
                if (dist[w] != 0xffffffffu) continue;
                dist[w] = dist[v] + 1;
                queue[tail++] = w;
                totals.distance_sum += dist[w];
                ++totals.reachable;
            }
        }
    }
    return totals;
}

}  // namespace

PathLengthResult avg_shortest_path(const DirectedGraph& graph, PathMode mode, unsigned threads) {
    const std::size_t n = graph.node_count();
    std::vector<std::vector<NodeId>> adj;
    if (mode == PathMode::Undirected) {
        adj = undirected_projection(graph);
    } else {
        adj.resize(n);
        for (NodeId v = 0; v < n; ++v) {
            auto succ = graph.successors(v);
            adj[v].assign(succ.begin(), succ.end());
        }
    }

    unsigned worker_count = threads != 0 ? threads : std::max(1u, std::thread::hardware_concurrency());
    worker_count = std::min<unsigned>(worker_count, n == 0 ? 1 : static_cast<unsigned>(n));

    std::vector<SweepTotals> partial(worker_count);
    if (worker_count <= 1 || n < 256) {
        partial[0] = bfs_range(adj, 0, static_cast<NodeId>(n));
    } else {
        std::vector<std::thread> pool;
        NodeId chunk = static_cast<NodeId>((n + worker_count - 1) / worker_count);
        for (unsigned t = 0; t < worker_count; ++t) {
            NodeId begin = std::min<NodeId>(t * chunk, static_cast<NodeId>(n));
            NodeId end = std::min<NodeId>(begin + chunk, static_cast<NodeId>(n));
            pool.emplace_back([&, t, begin, end] { partial[t] = bfs_range(adj, begin, end); });
        }
        for (auto& th : pool) th.join();
    }

    std::uint64_t distance_sum = 0, reachable = 0;
    for (const auto& p : partial) {
        distance_sum += p.distance_sum;
        reachable += p.reachable;
    }
    if (reachable == 0) throw std::runtime_error("no paths");

    std::uint64_t ordered_pairs = static_cast<std::uint64_t>(n) * (n - 1);
    PathLengthResult result;
    result.mean_distance = static_cast<double>(distance_sum) / static_cast<double>(reachable);
    result.reachable_pairs = reachable;
    result.unreachable_pairs = ordered_pairs - reachable;
    return result;
}

SummaryStats summary_stats(const DirectedGraph& graph, PathMode mode,
                           ClusteringOptions clustering_options) {
    if (graph.edge_count() == 0) throw std::runtime_error("undefined on edgeless graph");
    SummaryStats stats;
    stats.n = graph.node_count();
    stats.l = graph.edge_count();
    stats.avg_degree = static_cast<double>(stats.l) / static_cast<double>(stats.n);
    stats.clustering = clustering_coefficient(graph, clustering_options);
    PathLengthResult paths = avg_shortest_path(graph, mode);
    stats.path_length = paths.mean_distance;
    stats.unreachable_pairs = paths.unreachable_pairs;
    stats.hierarchy = hierarchy_degree(graph);
    return stats;
}

}  // namespace netprof
