#include "netprof/graph_export.hpp"

#include <ostream>
#include <string>
#include <vector>

#include "netprof/metrics.hpp"

namespace netprof {

namespace {

std::string dot_quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out.push_back('\\');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

std::string xml_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            case '\'': out += "&apos;"; break;
            default: out.push_back(c);
        }
    }
    return out;
}

std::vector<bool> cycle_flags(const DirectedGraph& graph) {
    std::vector<bool> in_cycle(graph.node_count(), false);
    for (NodeId v : cycle_members(graph)) in_cycle[v] = true;
    return in_cycle;
}

}  // namespace

void write_dot(const DirectedGraph& graph, std::ostream& output) {
    auto in_cycle = cycle_flags(graph);
    output << "digraph G {\n";
    for (NodeId v = 0; v < graph.node_count(); ++v) {
        output << "  " << dot_quote(graph.label(v));
        if (in_cycle[v]) output << " [shape=triangle, color=blue]";
        else output << " [shape=circle, color=red]";
        output << ";\n";
    }
    for (NodeId u = 0; u < graph.node_count(); ++u)
        for (NodeId v : graph.successors(u))
            output << "  " << dot_quote(graph.label(u)) << " -> " << dot_quote(graph.label(v))
                   << ";\n";
    output << "}\n";
}

void write_graphml(const DirectedGraph& graph, std::ostream& output) {
    auto in_cycle = cycle_flags(graph);
    output << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
           << "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n"
           << "  <key id=\"label\" for=\"node\" attr.name=\"label\" attr.type=\"string\"/>\n"
           << "  <key id=\"shape\" for=\"node\" attr.name=\"shape\" attr.type=\"string\"/>\n"
           << "  <key id=\"color\" for=\"node\" attr.name=\"color\" attr.type=\"string\"/>\n"
           << "  <graph id=\"G\" edgedefault=\"directed\">\n";
    for (NodeId v = 0; v < graph.node_count(); ++v) {
        output << "    <node id=\"n" << v << "\">"
               << "<data key=\"label\">" << xml_escape(graph.label(v)) << "</data>"
               << "<data key=\"shape\">" << (in_cycle[v] ? "triangle" : "circle") << "</data>"
               << "<data key=\"color\">" << (in_cycle[v] ? "blue" : "red") << "</data>"
               << "</node>\n";
    }
    std::size_t edge_id = 0;
    for (NodeId u = 0; u < graph.node_count(); ++u)
        for (NodeId v : graph.successors(u))
            output << "    <edge id=\"e" << edge_id++ << "\" source=\"n" << u << "\" target=\"n"
                   << v << "\"/>\n";
    output << "  </graph>\n</graphml>\n";
}

void export_graph(const DirectedGraph& graph, ExportFormat format, std::ostream& output) {
    if (format == ExportFormat::Dot) write_dot(graph, output);
    else write_graphml(graph, output);
}

}  // namespace netprof
