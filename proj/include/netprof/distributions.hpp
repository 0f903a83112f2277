#pragma once
// Cumulative degree distributions and the tail analysis built on them:
// power-law fitting (exact discrete MLE plus log-log regression), automatic
// lower-bound selection, in/out crossing detection and cutoff detection.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <utility>
#include <vector>

#include "netprof/graph.hpp"

namespace netprof {

enum class Direction { In, Out };

const char* to_string(Direction direction);

struct DegreeSequence {
    Direction direction = Direction::In;
    std::vector<std::uint32_t> values;  // one entry per node
    std::size_t size() const { return values.size(); }
};

DegreeSequence in_degree_sequence(const DirectedGraph& graph);
DegreeSequence out_degree_sequence(const DirectedGraph& graph);

// Pr(K >= k) by default; Pr(K > k) is available for comparison.
enum class CcdfConvention { GreaterEqual, StrictlyGreater };

struct CcdfPoint {
    std::uint32_t k = 0;
    double p = 0.0;
};

// Step function P(k) stored at the degrees where it changes: one point per
// distinct represented degree, k strictly increasing, p strictly
// decreasing. Zero-degree nodes count in the denominator but generate no
// point.
struct Ccdf {
    Direction direction = Direction::In;
    CcdfConvention convention = CcdfConvention::GreaterEqual;
    std::size_t sample_count = 0;
    std::vector<CcdfPoint> points;

    // Step-function evaluation; 0 beyond the last represented degree.
    double value_at(std::uint32_t k) const;
    std::uint32_t max_k() const { return points.empty() ? 0 : points.back().k; }
};

// Throws "degenerate sequence" when no positive degree is represented.
Ccdf ccdf(const DegreeSequence& sequence,
          CcdfConvention convention = CcdfConvention::GreaterEqual);

// Two-column "k<TAB>p" text with a header comment; directly plottable.
void write_ccdf(const Ccdf& ccdf, std::ostream& output);

struct PowerLawFit {
    // Density exponent gamma from the exact discrete maximum likelihood
    // (numerical zeta-likelihood maximization over the fit range).
    double gamma_mle = 0.0;
    // The closed-form continuous approximation
    // 1 + n / sum(ln(k_i / (k_min - 1/2))); biased for small k_min,
    // reported for comparison.
    double gamma_mle_approx = 0.0;
    // 1 + |slope| of the least-squares line through (log10 k, log10 P(k)).
    double gamma_ols = 0.0;
    double ols_log10_slope = 0.0;
    double ols_log10_intercept = 0.0;
    std::uint32_t k_min = 1;
    std::optional<std::uint32_t> k_max;
    // Kolmogorov-Smirnov distance between the tail-conditional empirical
    // CCDF and the fitted discrete power law over the range.
    double ks_distance = 0.0;
    std::size_t n_tail = 0;
};

// Fits p(k) ~ k^-gamma over samples in [k_min, k_max]. Throws
// "insufficient tail" with fewer than min_tail samples in range and
// "zero variance" when the range holds a single distinct value.
PowerLawFit fit_power_law(const DegreeSequence& sequence, std::uint32_t k_min,
                          std::optional<std::uint32_t> k_max = {},
                          std::size_t min_tail = 10);

// Lower bound minimizing the KS distance of the MLE fit, candidates being
// the observed degree values that keep at least min_tail samples in the
// tail. Requires at least min_samples samples. max_candidate, when given,
// restricts the candidates (used to keep the fit anchored in the scale-free
// regime of truncated distributions rather than their terminal bend).
std::uint32_t select_k_min(const DegreeSequence& sequence, std::size_t min_tail = 10,
                           std::size_t min_samples = 50,
                           std::optional<std::uint32_t> max_candidate = {});

struct CutoffResult;

// The fit/cutoff pair the report pipeline uses. k_min is auto-selected
// among candidates up to a tenth of the largest degree (a scale-free
// regime needs at least a decade of range); when the first fit detects a
// cutoff, the regime is refitted with k_max = k_plus / 2 so the regression
// slope describes the straight part of the curve, as read off a log-log
// plot, not the truncation bend.
struct RegimeAnalysis;
RegimeAnalysis regime_fit(const DegreeSequence& sequence, double tau = 0.5,
                          std::optional<std::uint32_t> k_min_override = {});

struct CrossingResult {
    std::optional<double> k_star;
    int sign_changes = 0;
    std::optional<std::pair<std::uint32_t, std::uint32_t>> bracket;
};

// First sign change of D(k) = log10 P_out(k) - log10 P_in(k) on the union
// of represented degrees where both CCDFs are positive, refined by linear
// interpolation in (log k, D). D identically zero is contact, not a
// crossing. Throws "no common support" when the ranges do not overlap.
CrossingResult crossing_point(const Ccdf& in_ccdf, const Ccdf& out_ccdf);

struct CutoffResult {
    std::optional<std::uint32_t> k_plus;
    // Largest observed shortfall of the empirical CCDF below the fitted
    // line, in decades (diagnostic, reported even when no cutoff).
    double departure_decades = 0.0;
};

// Truncation detector. The fitted regression line is the reference; a
// cutoff is reported when the empirical CCDF ends more than tau decades
// below it: either the last two or more represented degrees sit > tau
// decades under the line, or the line still predicts a substantial number
// of samples (>= 30) beyond the largest observed degree. k_plus is that
// largest observed degree, where the scale-free regime ends.
CutoffResult detect_cutoff(const DegreeSequence& sequence, const PowerLawFit& fit,
                           double tau = 0.5);

enum class AsymmetryDirection { None, OutSteeper, InSteeper };

const char* to_string(AsymmetryDirection direction);

struct RegimeAnalysis {
    PowerLawFit fit;       // regime-restricted when a cutoff was detected
    CutoffResult cutoff;   // measured against the regime line
};

struct DistributionAnalysis {
    PowerLawFit fit_in;
    PowerLawFit fit_out;
    CrossingResult crossing;
    CutoffResult cutoff_in;
    CutoffResult cutoff_out;
    AsymmetryDirection direction = AsymmetryDirection::None;
};

// Regression slopes closer than this are not flagged as asymmetric.
inline constexpr double kAsymmetryOlsTolerance = 0.05;

// Runs both fits (k_min auto-selected unless given), crossing detection
// and both cutoff detectors.
DistributionAnalysis asymmetry_report(const DirectedGraph& graph, double tau = 0.5,
                                      std::optional<std::uint32_t> k_min_override = {},
                                      CcdfConvention convention = CcdfConvention::GreaterEqual);

}  // namespace netprof
