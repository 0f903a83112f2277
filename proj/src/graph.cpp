#include "netprof/graph.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace netprof {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::uint64_t edge_key(NodeId u, NodeId v) {
    return (static_cast<std::uint64_t>(u) << 32) | v;
}

}  // namespace

DirectedGraph DirectedGraph::with_labels(std::vector<std::string> labels,
                                         std::span<const std::pair<NodeId, NodeId>> edges,
                                         LoadSummary* summary) {
    {
        std::unordered_set<std::string> distinct(labels.begin(), labels.end());
        if (distinct.size() != labels.size())
            throw std::invalid_argument("node labels must be unique");
    }
    DirectedGraph g;
    const std::size_t n = labels.size();
    g.labels_ = std::move(labels);
    g.out_.assign(n, {});
    g.in_.assign(n, {});

    LoadSummary local;
    std::unordered_set<std::uint64_t> seen;
    seen.reserve(edges.size() * 2);
    for (const auto& [u, v] : edges) {
        if (u >= n || v >= n) throw std::out_of_range("edge endpoint out of range");
        if (u == v) {
            ++local.self_loops_rejected;
            continue;
        }
        if (!seen.insert(edge_key(u, v)).second) {
            ++local.duplicates_dropped;
            continue;
        }
        g.out_[u].push_back(v);
        g.in_[v].push_back(u);
        ++g.edge_count_;
    }
    for (auto& adj : g.out_) std::sort(adj.begin(), adj.end());
    for (auto& adj : g.in_) std::sort(adj.begin(), adj.end());
    local.nodes = g.node_count();
    local.edges = g.edge_count();
    if (summary) *summary = local;
    return g;
}

DirectedGraph DirectedGraph::from_labeled_edges(
    const std::vector<std::pair<std::string, std::string>>& edges, LoadSummary* summary) {
    std::vector<std::string> labels;
    std::unordered_map<std::string, NodeId> id_of;
    auto intern = [&](const std::string& raw) {
        std::string label = trim(raw);
        auto it = id_of.find(label);
        if (it != id_of.end()) return it->second;
        NodeId id = static_cast<NodeId>(labels.size());
        id_of.emplace(label, id);
        labels.push_back(std::move(label));
        return id;
    };
    std::vector<std::pair<NodeId, NodeId>> int_edges;
    int_edges.reserve(edges.size());
    std::size_t label_self_loops = 0;
    for (const auto& [s, t] : edges) {
        // Self-loops never create a node: a label appearing only in
        // rejected self-loops stays out of the graph.
        if (trim(s) == trim(t)) {
            ++label_self_loops;
            continue;
        }
        NodeId u = intern(s);
        NodeId v = intern(t);
        int_edges.emplace_back(u, v);
    }
    LoadSummary local;
    DirectedGraph g = with_labels(std::move(labels), int_edges, &local);
    local.self_loops_rejected += label_self_loops;
    if (summary) *summary = local;
    return g;
}

DirectedGraph DirectedGraph::from_edges(std::size_t n,
                                        std::span<const std::pair<NodeId, NodeId>> edges,
                                        LoadSummary* summary) {
    std::vector<std::string> labels;
    labels.reserve(n);
    for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i));
    return with_labels(std::move(labels), edges, summary);
}

bool DirectedGraph::has_edge(NodeId source, NodeId target) const {
    const auto& adj = out_[source];
    return std::binary_search(adj.begin(), adj.end(), target);
}

std::vector<std::pair<NodeId, NodeId>> DirectedGraph::edges() const {
    std::vector<std::pair<NodeId, NodeId>> result;
    result.reserve(edge_count_);
    for (NodeId u = 0; u < out_.size(); ++u)
        for (NodeId v : out_[u]) result.emplace_back(u, v);
    return result;
}

DirectedGraph load_edge_list(std::istream& input, const FormatOptions& options,
                             LoadSummary* summary) {
    std::vector<std::pair<std::string, std::string>> pairs;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(input, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::size_t first = line.find_first_not_of(" \t");
        if (first == std::string::npos) continue;
        if (line[first] == '#') continue;

        std::string src, dst;
        if (options.separator == FieldSeparator::Whitespace) {
            std::size_t a = first;
            std::size_t a_end = line.find_first_of(" \t", a);
            std::size_t b = a_end == std::string::npos
                                ? std::string::npos
                                : line.find_first_not_of(" \t", a_end);
            if (b == std::string::npos)
                throw std::runtime_error("parse error at line " + std::to_string(line_no) +
                                         ": expected 2 fields");
            std::size_t b_end = line.find_first_of(" \t", b);
            src = line.substr(a, a_end - a);
            dst = b_end == std::string::npos ? line.substr(b) : line.substr(b, b_end - b);
        } else {
            char sep = options.separator == FieldSeparator::Tab ? '\t' : ',';
            std::size_t pos = line.find(sep);
            if (pos == std::string::npos)
                throw std::runtime_error("parse error at line " + std::to_string(line_no) +
                                         ": expected 2 fields");
            src = line.substr(0, pos);
            // Any third field is ignored.
            std::size_t pos2 = line.find(sep, pos + 1);
            dst = pos2 == std::string::npos ? line.substr(pos + 1)
                                            : line.substr(pos + 1, pos2 - pos - 1);
        }
        src = trim(src);
        dst = trim(dst);
        if (src.empty() || dst.empty())
            throw std::runtime_error("parse error at line " + std::to_string(line_no) +
                                     ": empty field");
        if (options.reverse_direction) std::swap(src, dst);
        pairs.emplace_back(std::move(src), std::move(dst));
    }
    if (pairs.empty()) throw std::runtime_error("no edges");
    return DirectedGraph::from_labeled_edges(pairs, summary);
}

void write_edge_list(const DirectedGraph& graph, std::ostream& output,
                     const std::vector<std::string>& header_comments) {
    for (const auto& comment : header_comments) output << "# " << comment << '\n';
    for (NodeId u = 0; u < graph.node_count(); ++u)
        for (NodeId v : graph.successors(u))
            output << graph.label(u) << '\t' << graph.label(v) << '\n';
}

std::vector<DegreeRecord> degrees(const DirectedGraph& graph) {
    std::vector<DegreeRecord> result(graph.node_count());
    for (NodeId v = 0; v < graph.node_count(); ++v) {
        result[v].node = v;
        result[v].k_in = static_cast<std::uint32_t>(graph.in_degree(v));
        result[v].k_out = static_cast<std::uint32_t>(graph.out_degree(v));
    }
    return result;
}

DirectedGraph filter_nodes(const DirectedGraph& graph,
                           const std::function<bool(const DegreeRecord&)>& remove) {
    auto records = degrees(graph);
    std::vector<bool> keep(graph.node_count(), false);
    std::vector<NodeId> new_id(graph.node_count(), 0);
    std::vector<std::string> labels;
    for (const auto& rec : records) {
        if (remove(rec)) continue;
        keep[rec.node] = true;
        new_id[rec.node] = static_cast<NodeId>(labels.size());
        labels.push_back(graph.label(rec.node));
    }
    if (labels.empty()) throw std::runtime_error("empty graph");

    std::vector<std::pair<NodeId, NodeId>> kept_edges;
    for (NodeId u = 0; u < graph.node_count(); ++u) {
        if (!keep[u]) continue;
        for (NodeId v : graph.successors(u))
            if (keep[v]) kept_edges.emplace_back(new_id[u], new_id[v]);
    }
    return DirectedGraph::with_labels(std::move(labels), kept_edges);
}

}  // namespace netprof
