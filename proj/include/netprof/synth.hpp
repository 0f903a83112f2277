#pragma once
// Synthetic network generators with controlled degree structure. Every
// generator is a pure function of its parameters including the seed, so
// detector tests have exact ground truth.

#include <cstdint>
#include <optional>
#include <utility>

#include "netprof/distributions.hpp"
#include "netprof/graph.hpp"

namespace netprof {

struct GeneratorSpec {
    std::size_t n = 0;
    double gamma_in = 2.0;
    double gamma_out = 2.0;
    // Degree floors. Sampling draws from the power law on
    // [max(k_min, 1), cutoff]; balancing may push entries down to k_min,
    // so a floor of 0 lets the balanced side contain sinks or sources.
    std::uint32_t k_min_in = 2;
    std::uint32_t k_min_out = 2;
    std::optional<std::uint32_t> cutoff_in;
    std::optional<std::uint32_t> cutoff_out;
    std::uint64_t seed = 0;
};

// n independent draws from the discrete power law p(k) ~ k^-gamma on
// [k_min, cutoff] (inverse transform on the exactly normalized mass
// function). Unbounded supports are capped at 2^26, far beyond any degree
// a graph here can realize. Throws on gamma <= 1, k_min < 1 or
// cutoff < k_min.
DegreeSequence sample_degree_sequence(std::size_t n, double gamma, std::uint32_t k_min,
                                      std::optional<std::uint32_t> cutoff, std::uint64_t seed,
                                      Direction direction = Direction::In);

// While the sums differ, decrements a uniformly chosen entry > k_floor in
// the larger-sum sequence. Throws when the sums cannot be matched without
// violating the floor.
std::pair<DegreeSequence, DegreeSequence> balance_sequences(DegreeSequence in_sequence,
                                                            DegreeSequence out_sequence,
                                                            std::uint32_t k_floor,
                                                            std::uint64_t seed);

struct ConfigModelStats {
    std::size_t requested_edges = 0;
    std::size_t self_loops_dropped = 0;
    std::size_t duplicates_dropped = 0;
};

// Erased directed configuration model: uniform stub matching, then
// self-loops and duplicate edges dropped (counted in stats). Requires
// equal lengths and equal sums.
DirectedGraph configuration_model(const DegreeSequence& in_sequence,
                                  const DegreeSequence& out_sequence, std::uint64_t seed,
                                  ConfigModelStats* stats = nullptr);

// sample -> balance -> configuration model. With gamma_out > gamma_in and
// a finite cutoff_in the result shows the asymmetric in/out pattern the
// detectors look for: a crossing of the two CCDFs and an in-side cutoff.
DirectedGraph generate_asymmetric_network(const GeneratorSpec& spec,
                                          ConfigModelStats* stats = nullptr);

struct InjectResult {
    DirectedGraph graph;
    double achieved_h = 1.0;
    std::size_t edges_added = 0;
};

// Adds back-edges (v, u) over randomly chosen directed paths u ~> v of
// length >= 2 until hierarchy_degree <= target_h. Input must be acyclic.
InjectResult inject_cycles(const DirectedGraph& dag, double target_h, std::uint64_t seed);

}  // namespace netprof
