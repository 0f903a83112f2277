#pragma once
// Annotated graph export. Cycle members render as blue triangles,
// everything else as red circles.

#include <iosfwd>

#include "netprof/graph.hpp"

namespace netprof {

enum class ExportFormat { Dot, GraphML };

void write_dot(const DirectedGraph& graph, std::ostream& output);
void write_graphml(const DirectedGraph& graph, std::ostream& output);
void export_graph(const DirectedGraph& graph, ExportFormat format, std::ostream& output);

}  // namespace netprof
