#include "netprof/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <ostream>
#include <stdexcept>

#include "netprof/zeta.hpp"

namespace netprof {

const char* to_string(Direction direction) {
    return direction == Direction::In ? "in" : "out";
}

const char* to_string(AsymmetryDirection direction) {
    switch (direction) {
        case AsymmetryDirection::OutSteeper: return "out_steeper";
        case AsymmetryDirection::InSteeper: return "in_steeper";
        default: return "none";
    }
}

DegreeSequence in_degree_sequence(const DirectedGraph& graph) {
    DegreeSequence seq;
    seq.direction = Direction::In;
    seq.values.reserve(graph.node_count());
    for (NodeId v = 0; v < graph.node_count(); ++v)
        seq.values.push_back(static_cast<std::uint32_t>(graph.in_degree(v)));
    return seq;
}

DegreeSequence out_degree_sequence(const DirectedGraph& graph) {
    DegreeSequence seq;
    seq.direction = Direction::Out;
    seq.values.reserve(graph.node_count());
    for (NodeId v = 0; v < graph.node_count(); ++v)
        seq.values.push_back(static_cast<std::uint32_t>(graph.out_degree(v)));
    return seq;
}

namespace {

// Distinct values ascending with the count of samples >= each value.
struct TailCounts {
    std::vector<std::uint32_t> values;
    std::vector<std::size_t> count_ge;
};

TailCounts tail_counts(const std::vector<std::uint32_t>& values) {
    std::map<std::uint32_t, std::size_t> freq;
    for (std::uint32_t v : values) ++freq[v];
    TailCounts tc;
    tc.values.reserve(freq.size());
    tc.count_ge.resize(freq.size());
    for (const auto& [v, c] : freq) tc.values.push_back(v);
    std::size_t running = 0;
    for (std::size_t i = freq.size(); i-- > 0;) {
        running += freq.at(tc.values[i]);
        tc.count_ge[i] = running;
    }
    return tc;
}

int sign_of(double x) { return (x > 0.0) - (x < 0.0); }

}  // namespace

double Ccdf::value_at(std::uint32_t k) const {
    auto it = std::lower_bound(points.begin(), points.end(), k,
                               [](const CcdfPoint& pt, std::uint32_t key) { return pt.k < key; });
    if (it == points.end()) return 0.0;
    return it->p;
}

Ccdf ccdf(const DegreeSequence& sequence, CcdfConvention convention) {
    if (sequence.values.empty()) throw std::runtime_error("degenerate sequence");
    TailCounts tc = tail_counts(sequence.values);

    Ccdf result;
    result.direction = sequence.direction;
    result.convention = convention;
    result.sample_count = sequence.values.size();
    const double n = static_cast<double>(result.sample_count);

    for (std::size_t i = 0; i < tc.values.size(); ++i) {
        std::uint32_t v = tc.values[i];
        double p = static_cast<double>(tc.count_ge[i]) / n;
        if (convention == CcdfConvention::GreaterEqual) {
            if (v >= 1) result.points.push_back({v, p});
        } else {
            // Pr(K > k) changes at k = v - 1 for each represented v.
            if (v >= 2) result.points.push_back({v - 1, p});
        }
    }
    if (result.points.empty()) throw std::runtime_error("degenerate sequence");
    return result;
}

void write_ccdf(const Ccdf& ccdf, std::ostream& output) {
    output << "# ccdf direction=" << to_string(ccdf.direction) << " n=" << ccdf.sample_count
           << " convention=" << (ccdf.convention == CcdfConvention::GreaterEqual ? "geq" : "gt")
           << '\n';
    char buffer[64];
    for (const auto& pt : ccdf.points) {
        std::snprintf(buffer, sizeof(buffer), "%u\t%.12g", pt.k, pt.p);
        output << buffer << '\n';
    }
}

PowerLawFit fit_power_law(const DegreeSequence& sequence, std::uint32_t k_min,
                          std::optional<std::uint32_t> k_max, std::size_t min_tail) {
    if (k_min < 1) throw std::invalid_argument("k_min must be >= 1");
    if (k_max && *k_max < k_min) throw std::invalid_argument("k_max below k_min");

    std::vector<std::uint32_t> tail;
    for (std::uint32_t v : sequence.values)
        if (v >= k_min && (!k_max || v <= *k_max)) tail.push_back(v);
    if (tail.size() < min_tail) throw std::runtime_error("insufficient tail");

    TailCounts tc = tail_counts(tail);
    if (tc.values.size() < 2) throw std::runtime_error("zero variance");

    PowerLawFit fit;
    fit.k_min = k_min;
    fit.k_max = k_max;
    fit.n_tail = tail.size();

    double sum_log = 0.0;
    double sum_log_shifted = 0.0;
    const double shift = static_cast<double>(k_min) - 0.5;
    for (std::uint32_t v : tail) {
        sum_log += std::log(static_cast<double>(v));
        sum_log_shifted += std::log(static_cast<double>(v) / shift);
    }
    fit.gamma_mle_approx = 1.0 + static_cast<double>(tail.size()) / sum_log_shifted;

    // Exact discrete MLE: minimize gamma * sum(ln k) + n * ln Z(gamma) by
    // ternary search; the negative log-likelihood is convex in gamma.
    const double n = static_cast<double>(tail.size());
    auto negll = [&](double gamma) {
        return gamma * sum_log + n * std::log(power_law_normalizer(gamma, k_min, k_max));
    };
    double lo = 1.000001, hi = 25.0;
    for (int iter = 0; iter < 200 && hi - lo > 1e-12; ++iter) {
        double m1 = lo + (hi - lo) / 3.0;
        double m2 = hi - (hi - lo) / 3.0;
        if (negll(m1) < negll(m2)) hi = m2;
        else lo = m1;
    }
    fit.gamma_mle = (lo + hi) / 2.0;

    // KS distance of the tail-conditional empirical CCDF against the
    // fitted discrete law, evaluated at the represented degrees.
    const double z_total = power_law_normalizer(fit.gamma_mle, k_min, k_max);
    double ks = 0.0;
    for (std::size_t i = 0; i < tc.values.size(); ++i) {
        double model = power_law_normalizer(fit.gamma_mle, tc.values[i], k_max) / z_total;
        double empirical = static_cast<double>(tc.count_ge[i]) / n;
        ks = std::max(ks, std::abs(empirical - model));
    }
    fit.ks_distance = ks;

    // Least squares on the log-log CCDF of the full sequence, restricted to
    // the fit range; this is the straight line drawn through the plotted
    // distribution. The ordinate of each represented degree is the midpoint
    // of its CCDF jump in log space (geometric mean of Pr(K >= k) and
    // Pr(K > k)), the plotting position that keeps the discrete staircase
    // from biasing the slope; the largest degree has no midpoint and drops
    // out.
    Ccdf full = ccdf(sequence);
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    std::size_t m = 0;
    for (std::size_t i = 0; i < full.points.size(); ++i) {
        const auto& pt = full.points[i];
        if (pt.k < k_min || (k_max && pt.k > *k_max)) continue;
        double p_next = i + 1 < full.points.size() ? full.points[i + 1].p : 0.0;
        if (p_next <= 0.0) continue;
        double x = std::log10(static_cast<double>(pt.k));
        double y = 0.5 * (std::log10(pt.p) + std::log10(p_next));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++m;
    }
    if (m < 2) throw std::runtime_error("zero variance");
    double denom = static_cast<double>(m) * sxx - sx * sx;
    if (denom == 0.0) throw std::runtime_error("zero variance");
    fit.ols_log10_slope = (static_cast<double>(m) * sxy - sx * sy) / denom;
    fit.ols_log10_intercept = (sy - fit.ols_log10_slope * sx) / static_cast<double>(m);
    fit.gamma_ols = 1.0 + std::abs(fit.ols_log10_slope);
    return fit;
}

std::uint32_t select_k_min(const DegreeSequence& sequence, std::size_t min_tail,
                           std::size_t min_samples,
                           std::optional<std::uint32_t> max_candidate) {
    if (sequence.values.size() < min_samples)
        throw std::runtime_error("insufficient samples for k_min selection");

    std::vector<std::uint32_t> positive;
    for (std::uint32_t v : sequence.values)
        if (v >= 1) positive.push_back(v);
    TailCounts tc = tail_counts(positive);

    std::optional<std::uint32_t> best;
    double best_ks = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < tc.values.size(); ++i) {
        if (tc.count_ge[i] < min_tail) break;  // larger candidates only shrink the tail
        std::uint32_t candidate = tc.values[i];
        if (max_candidate && candidate > *max_candidate) break;
        try {
            PowerLawFit fit = fit_power_law(sequence, candidate, {}, min_tail);
            if (fit.ks_distance < best_ks) {
                best_ks = fit.ks_distance;
                best = candidate;
            }
        } catch (const std::runtime_error&) {
            // Candidate with a degenerate tail; skip it.
        }
    }
    if (!best) throw std::runtime_error("no k_min candidate leaves a fittable tail");
    return *best;
}

RegimeAnalysis regime_fit(const DegreeSequence& sequence, double tau,
                          std::optional<std::uint32_t> k_min_override) {
    std::uint32_t max_k = 0;
    for (std::uint32_t v : sequence.values) max_k = std::max(max_k, v);

    std::uint32_t k_min;
    if (k_min_override) {
        k_min = *k_min_override;
    } else {
        std::uint32_t cap = std::max<std::uint32_t>(1, max_k / 10);
        k_min = select_k_min(sequence, 10, 50, cap);
    }

    RegimeAnalysis analysis;
    analysis.fit = fit_power_law(sequence, k_min);
    analysis.cutoff = detect_cutoff(sequence, analysis.fit, tau);
    if (analysis.cutoff.k_plus) {
        // Keep the regression clear of the truncation bend.
        std::uint32_t k_max = *analysis.cutoff.k_plus / 2;
        if (k_max > k_min) {
            try {
                analysis.fit = fit_power_law(sequence, k_min, k_max);
                analysis.cutoff = detect_cutoff(sequence, analysis.fit, tau);
            } catch (const std::runtime_error&) {
                // Regime too thin to refit; the full-range fit stands.
            }
        }
    }
    return analysis;
}

CrossingResult crossing_point(const Ccdf& in_ccdf, const Ccdf& out_ccdf) {
    if (in_ccdf.points.empty() || out_ccdf.points.empty())
        throw std::runtime_error("no common support");
    // Compare only where both curves have represented degrees.
    const std::uint32_t lo =
        std::max(in_ccdf.points.front().k, out_ccdf.points.front().k);
    const std::uint32_t hi = std::min(in_ccdf.max_k(), out_ccdf.max_k());
    std::vector<std::uint32_t> grid;
    grid.reserve(in_ccdf.points.size() + out_ccdf.points.size());
    for (const auto& pt : in_ccdf.points)
        if (pt.k >= lo && pt.k <= hi) grid.push_back(pt.k);
    for (const auto& pt : out_ccdf.points)
        if (pt.k >= lo && pt.k <= hi) grid.push_back(pt.k);
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

    CrossingResult result;
    int last_sign = 0;
    std::uint32_t last_k = 0;
    double last_d = 0.0;
    std::uint32_t touch_k = 0;  // start of a zero plateau
    bool touched = false;
    bool any_common = false;

    for (std::uint32_t k : grid) {
        double p_in = in_ccdf.value_at(k);
        double p_out = out_ccdf.value_at(k);
        if (p_in <= 0.0 || p_out <= 0.0) continue;
        any_common = true;
        double d = std::log10(p_out) - std::log10(p_in);
        int s = sign_of(d);
        if (s == 0) {
            if (!touched) {
                touched = true;
                touch_k = k;
            }
            continue;
        }
        if (last_sign == 0) {
            last_sign = s;
            last_k = k;
            last_d = d;
            touched = false;
            continue;
        }
        if (s != last_sign) {
            ++result.sign_changes;
            if (!result.k_star) {
                if (touched) {
                    // The curves met exactly at a represented degree before
                    // changing side.
                    result.k_star = static_cast<double>(touch_k);
                    result.bracket = {{touch_k, touch_k}};
                } else {
                    double x1 = std::log(static_cast<double>(last_k));
                    double x2 = std::log(static_cast<double>(k));
                    double x = x1 + (0.0 - last_d) * (x2 - x1) / (d - last_d);
                    result.k_star = std::exp(x);
                    result.bracket = {{last_k, k}};
                }
            }
        }
        touched = false;
        last_sign = s;
        last_k = k;
        last_d = d;
    }
    if (!any_common) throw std::runtime_error("no common support");
    return result;
}

CutoffResult detect_cutoff(const DegreeSequence& sequence, const PowerLawFit& fit, double tau) {
    CutoffResult result;
    Ccdf full = ccdf(sequence);

    auto line = [&](double k) {
        return fit.ols_log10_intercept + fit.ols_log10_slope * std::log10(k);
    };

    std::vector<double> shortfalls;
    std::vector<std::uint32_t> ks;
    for (const auto& pt : full.points) {
        if (pt.k < fit.k_min) continue;
        ks.push_back(pt.k);
        shortfalls.push_back(line(static_cast<double>(pt.k)) - std::log10(pt.p));
    }
    if (ks.empty()) return result;

    for (double s : shortfalls) result.departure_decades = std::max(result.departure_decades, s);
    if (result.departure_decades < 0.0) result.departure_decades = 0.0;

    // Terminal run of represented degrees sitting > tau decades under the
    // fitted line.
    std::size_t run = 0;
    for (std::size_t i = shortfalls.size(); i-- > 0;) {
        if (shortfalls[i] > tau) ++run;
        else break;
    }

    // Missing terminal mass: how many samples the fitted line still
    // predicts beyond the largest observed degree. A completely absent
    // tail of this size is decisive evidence of truncation.
    const std::uint32_t k_last = ks.back();
    const double n = static_cast<double>(full.sample_count);
    const double beyond_log10_p = line(static_cast<double>(k_last) + 1.0);
    const double expected_beyond = n * std::pow(10.0, std::min(beyond_log10_p, 0.0));
    const double terminal_shortfall = beyond_log10_p + std::log10(n);
    constexpr double kMissingSampleFloor = 30.0;

    bool detected = run >= 2 ||
                    (expected_beyond >= kMissingSampleFloor && terminal_shortfall > tau);
    if (detected && k_last > fit.k_min) result.k_plus = k_last;
    return result;
}

DistributionAnalysis asymmetry_report(const DirectedGraph& graph, double tau,
                                      std::optional<std::uint32_t> k_min_override,
                                      CcdfConvention convention) {
    if (graph.edge_count() == 0) throw std::runtime_error("no edges");
    DegreeSequence seq_in = in_degree_sequence(graph);
    DegreeSequence seq_out = out_degree_sequence(graph);

    DistributionAnalysis analysis;
    RegimeAnalysis in_side = regime_fit(seq_in, tau, k_min_override);
    RegimeAnalysis out_side = regime_fit(seq_out, tau, k_min_override);
    analysis.fit_in = in_side.fit;
    analysis.fit_out = out_side.fit;
    analysis.crossing = crossing_point(ccdf(seq_in, convention), ccdf(seq_out, convention));
    analysis.cutoff_in = in_side.cutoff;
    analysis.cutoff_out = out_side.cutoff;

    double diff = analysis.fit_out.gamma_ols - analysis.fit_in.gamma_ols;
    if (diff > kAsymmetryOlsTolerance) analysis.direction = AsymmetryDirection::OutSteeper;
    else if (diff < -kAsymmetryOlsTolerance) analysis.direction = AsymmetryDirection::InSteeper;
    return analysis;
}

}  // namespace netprof
