#include "netprof/synth.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "netprof/metrics.hpp"
#include "netprof/zeta.hpp"

namespace netprof {

namespace {

// Deterministic helpers on top of mt19937_64 so output does not depend on
// the standard library's distribution implementations.

double canonical_unit(std::mt19937_64& gen) {
    return static_cast<double>(gen() >> 11) * 0x1.0p-53;  // [0, 1)
}

std::size_t bounded_index(std::mt19937_64& gen, std::size_t bound) {
    return static_cast<std::size_t>(gen() % bound);
}

template <typename T>
void shuffle_vector(std::vector<T>& v, std::mt19937_64& gen) {
    for (std::size_t i = v.size(); i > 1; --i)
        std::swap(v[i - 1], v[bounded_index(gen, i)]);
}

std::uint64_t split_seed(std::uint64_t seed, std::uint64_t stream) {
    // splitmix64 over seed + stream tag.
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

}  // namespace

DegreeSequence sample_degree_sequence(std::size_t n, double gamma, std::uint32_t k_min,
                                      std::optional<std::uint32_t> cutoff, std::uint64_t seed,
                                      Direction direction) {
    if (!(gamma > 1.0)) throw std::invalid_argument("gamma must exceed 1");
    if (k_min < 1) throw std::invalid_argument("k_min must be >= 1");
    if (cutoff && *cutoff < k_min) throw std::invalid_argument("cutoff below k_min");

    // CCDF table over [k_min, table_end]; draws landing beyond it (possible
    // only for unbounded or very wide supports) fall back to a zeta search.
    constexpr std::uint32_t kMaxTable = 1u << 21;
    std::uint32_t table_end =
        cutoff ? std::min(*cutoff, k_min + kMaxTable) : k_min + kMaxTable;
    const bool full_coverage = cutoff && *cutoff <= table_end;

    double beyond = 0.0;
    if (!full_coverage) {
        beyond = cutoff ? power_law_normalizer(gamma, table_end + 1, *cutoff)
                        : hurwitz_zeta(gamma, static_cast<double>(table_end) + 1.0);
    }
    std::vector<double> tail_mass(table_end - k_min + 1);
    double running = beyond;
    for (std::uint32_t k = table_end; k >= k_min; --k) {
        running += std::pow(static_cast<double>(k), -gamma);
        tail_mass[k - k_min] = running;
    }
    const double total = running;
    for (double& m : tail_mass) m /= total;  // tail_mass[i] = P(K >= k_min + i)
    const double beyond_mass = beyond / total;

    std::mt19937_64 gen(seed);
    DegreeSequence seq;
    seq.direction = direction;
    seq.values.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        double u = 1.0 - canonical_unit(gen);  // (0, 1]
        if (!full_coverage && u <= beyond_mass) {
            // Deep tail: largest k with P(K >= k) >= u, found by doubling
            // then bisecting on the exact tail mass. Unbounded supports are
            // capped at 2^26; for any gamma of practical interest the mass
            // out there is vanishing, and degrees stay within range.
            const std::uint32_t limit = cutoff ? *cutoff : (1u << 26);
            auto tail_p = [&](std::uint32_t k) {
                double z = cutoff ? power_law_normalizer(gamma, k, *cutoff)
                                  : hurwitz_zeta(gamma, static_cast<double>(k));
                return z / total;
            };
            std::uint32_t lo = table_end, hi = table_end;
            while (hi < limit && tail_p(hi + 1) >= u) {
                lo = hi + 1;
                hi = hi >= limit / 2 ? limit : hi * 2;
            }
            while (lo < hi) {
                std::uint32_t mid = lo + (hi - lo + 1) / 2;
                if (tail_p(mid) >= u) lo = mid;
                else hi = mid - 1;
            }
            seq.values.push_back(lo);
            continue;
        }
        // Largest index with tail_mass >= u; tail_mass is descending.
        auto it = std::partition_point(tail_mass.begin(), tail_mass.end(),
                                       [&](double p) { return p >= u; });
        std::size_t idx = it == tail_mass.begin() ? 0 : static_cast<std::size_t>(it - tail_mass.begin()) - 1;
        seq.values.push_back(k_min + static_cast<std::uint32_t>(idx));
    }
    return seq;
}

std::pair<DegreeSequence, DegreeSequence> balance_sequences(DegreeSequence in_sequence,
                                                            DegreeSequence out_sequence,
                                                            std::uint32_t k_floor,
                                                            std::uint64_t seed) {
    if (in_sequence.values.empty() || out_sequence.values.empty())
        throw std::invalid_argument("sequences must be nonempty");

    auto sum_of = [](const DegreeSequence& s) {
        std::uint64_t total = 0;
        for (std::uint32_t v : s.values) total += v;
        return total;
    };
    std::uint64_t sum_in = sum_of(in_sequence);
    std::uint64_t sum_out = sum_of(out_sequence);
    if (sum_in == sum_out) return {std::move(in_sequence), std::move(out_sequence)};

    DegreeSequence& larger = sum_in > sum_out ? in_sequence : out_sequence;
    std::uint64_t deficit = sum_in > sum_out ? sum_in - sum_out : sum_out - sum_in;

    std::vector<std::size_t> eligible;
    for (std::size_t i = 0; i < larger.values.size(); ++i)
        if (larger.values[i] > k_floor) eligible.push_back(i);

    std::mt19937_64 gen(seed);
    while (deficit > 0) {
        if (eligible.empty())
            throw std::runtime_error("cannot balance sequences without violating the floor");
        std::size_t pick = bounded_index(gen, eligible.size());
        std::size_t idx = eligible[pick];
        --larger.values[idx];
        --deficit;
        if (larger.values[idx] <= k_floor) {
            eligible[pick] = eligible.back();
            eligible.pop_back();
        }
    }
    return {std::move(in_sequence), std::move(out_sequence)};
}

DirectedGraph configuration_model(const DegreeSequence& in_sequence,
                                  const DegreeSequence& out_sequence, std::uint64_t seed,
                                  ConfigModelStats* stats) {
    if (in_sequence.values.size() != out_sequence.values.size())
        throw std::invalid_argument("degree sequences must have equal length");
    std::uint64_t sum_in = 0, sum_out = 0;
    for (std::uint32_t v : in_sequence.values) sum_in += v;
    for (std::uint32_t v : out_sequence.values) sum_out += v;
    if (sum_in != sum_out) throw std::invalid_argument("degree sums differ");

    const std::size_t n = in_sequence.values.size();
    std::vector<NodeId> in_stubs, out_stubs;
    in_stubs.reserve(sum_in);
    out_stubs.reserve(sum_out);
    for (std::size_t v = 0; v < n; ++v) {
        for (std::uint32_t i = 0; i < in_sequence.values[v]; ++i)
            in_stubs.push_back(static_cast<NodeId>(v));
        for (std::uint32_t i = 0; i < out_sequence.values[v]; ++i)
            out_stubs.push_back(static_cast<NodeId>(v));
    }

    std::mt19937_64 gen(seed);
    shuffle_vector(in_stubs, gen);

    std::vector<std::pair<NodeId, NodeId>> edges;
    edges.reserve(out_stubs.size());
    for (std::size_t i = 0; i < out_stubs.size(); ++i)
        edges.emplace_back(out_stubs[i], in_stubs[i]);

    LoadSummary summary;
    DirectedGraph graph = DirectedGraph::from_edges(n, edges, &summary);
    if (stats) {
        stats->requested_edges = out_stubs.size();
        stats->self_loops_dropped = summary.self_loops_rejected;
        stats->duplicates_dropped = summary.duplicates_dropped;
    }
    return graph;
}

DirectedGraph generate_asymmetric_network(const GeneratorSpec& spec, ConfigModelStats* stats) {
    if (spec.n == 0) throw std::invalid_argument("n must be >= 1");
    if (!(spec.gamma_in > 1.0) || !(spec.gamma_out > 1.0))
        throw std::invalid_argument("gamma must exceed 1");
    if (spec.k_min_in == 0 && spec.k_min_out == 0)
        throw std::invalid_argument("at least one k_min must be >= 1");

    std::uint32_t sample_min_in = std::max<std::uint32_t>(spec.k_min_in, 1);
    std::uint32_t sample_min_out = std::max<std::uint32_t>(spec.k_min_out, 1);
    DegreeSequence in_seq = sample_degree_sequence(spec.n, spec.gamma_in, sample_min_in,
                                                   spec.cutoff_in, split_seed(spec.seed, 0),
                                                   Direction::In);

    // The in side carries the degree surplus: it is the heavy, truncated
    // marginal whose balancing decrements create the zero-in-degree leaf
    // population. Keep the out marginal intact by redrawing it (on derived
    // streams, still a pure function of the seed) while it oversamples the
    // in side; if the spec makes that impossible the larger side is
    // balanced as usual.
    std::uint64_t sum_in = 0;
    for (std::uint32_t v : in_seq.values) sum_in += v;
    DegreeSequence out_seq;
    std::uint64_t sum_out = 0;
    for (std::uint64_t attempt = 0; attempt < 64; ++attempt) {
        out_seq = sample_degree_sequence(spec.n, spec.gamma_out, sample_min_out, spec.cutoff_out,
                                         split_seed(spec.seed, 1 + 4 * attempt), Direction::Out);
        sum_out = 0;
        for (std::uint32_t v : out_seq.values) sum_out += v;
        if (sum_out <= sum_in) break;
    }
    std::uint32_t floor = sum_in > sum_out ? spec.k_min_in : spec.k_min_out;

    auto [balanced_in, balanced_out] =
        balance_sequences(std::move(in_seq), std::move(out_seq), floor, split_seed(spec.seed, 2));
    return configuration_model(balanced_in, balanced_out, split_seed(spec.seed, 3), stats);
}

InjectResult inject_cycles(const DirectedGraph& dag, double target_h, std::uint64_t seed) {
    if (target_h < 0.0 || target_h > 1.0)
        throw std::invalid_argument("target_h must lie in [0, 1]");
    {
        SccPartition sccs = scc_decompose(dag);
        for (std::uint32_t size : sccs.component_sizes)
            if (size >= 2) throw std::invalid_argument("input graph must be acyclic");
    }
    if (dag.edge_count() == 0) throw std::runtime_error("no directed path of length >= 2");

    const std::size_t n = dag.node_count();
    std::vector<std::string> labels;
    labels.reserve(n);
    for (NodeId v = 0; v < n; ++v) labels.push_back(dag.label(v));
    std::vector<std::pair<NodeId, NodeId>> edges = dag.edges();
    DirectedGraph current = DirectedGraph::with_labels(labels, edges);

    std::mt19937_64 gen(seed);
    InjectResult result{std::move(current), hierarchy_degree(dag), 0};

    std::vector<std::uint32_t> dist(n);
    while (result.achieved_h > target_h) {
        // Random source order; take the first source offering a back-edge
        // candidate over a path of length >= 2.
        std::vector<NodeId> order(n);
        for (NodeId v = 0; v < n; ++v) order[v] = v;
        shuffle_vector(order, gen);

        bool added = false;
        for (NodeId u : order) {
            std::fill(dist.begin(), dist.end(), 0xffffffffu);
            dist[u] = 0;
            std::vector<NodeId> queue{u};
            std::vector<NodeId> candidates;
            for (std::size_t head = 0; head < queue.size(); ++head) {
                NodeId v = queue[head];
                for (NodeId w : result.graph.successors(v)) {
                    if (dist[w] != 0xffffffffu) continue;
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                    if (dist[w] >= 2 && !result.graph.has_edge(w, u)) candidates.push_back(w);
                }
            }
            if (candidates.empty()) continue;
            NodeId v = candidates[bounded_index(gen, candidates.size())];
            edges.emplace_back(v, u);
            result.graph = DirectedGraph::with_labels(labels, edges);
            ++result.edges_added;
            result.achieved_h = hierarchy_degree(result.graph);
            added = true;
            break;
        }
        if (!added) {
            if (result.edges_added == 0)
                throw std::runtime_error("no directed path of length >= 2");
            break;  // cannot lower H any further
        }
    }
    return result;
}

}  // namespace netprof
