#pragma once
// Write-only SVG figures: the log-log CCDF overlay with fitted lines and
// the in/out degree scatter with its regression line. Figures never feed
// back into any computed number.

#include <iosfwd>
#include <span>

#include "netprof/correlation.hpp"
#include "netprof/distributions.hpp"
#include "netprof/graph.hpp"

namespace netprof {

void write_ccdf_figure(const Ccdf& in_ccdf, const Ccdf& out_ccdf, const PowerLawFit* fit_in,
                       const PowerLawFit* fit_out, const CrossingResult* crossing,
                       std::ostream& output);

void write_scatter_figure(std::span<const DegreeRecord> records, const CorrelationResult* fit,
                          std::ostream& output);

}  // namespace netprof
