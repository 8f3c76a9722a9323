#pragma once

#include "persuasion/belief.hpp"
#include "persuasion/posterior.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace persuasion {

// Tolerance for envelope support certificates (mean and certified value).
inline constexpr double kCertificateTol = 1e-9;

// Grid points used by the envelope when the caller does not override it.
inline constexpr int kDefaultEnvelopeResolution = 10001;

// One-sided sampling offset around declared breakpoints.
inline constexpr double kBreakpointOffset = 1e-9;

// Bounded sender utility over binary beliefs, evaluated at the probability of
// state 1. Declared breakpoints mark kinks or jumps the grid must sample
// exactly (plus one-sided neighborhoods).
struct PiecewiseUtility {
    std::function<double(double)> eval;
    std::vector<double> breakpoints;
};

// Envelope value at a query belief plus a supporting mixture certifying it:
// the support is Bayes-plausible at the query and its utility mixture equals
// the value within kCertificateTol.
struct EnvelopeResult {
    double value = 0.0;
    PosteriorDistribution support;
};

// Exact concave envelope of the indicator 1{q >= threshold} at `query`:
// 1 when query >= threshold, otherwise query/threshold with support
// {(0, 1 - query/threshold), (threshold, query/threshold)}.
EnvelopeResult cav_threshold(double threshold, double query);

// Upper concave envelope of a sampled utility. Samples a uniform grid of
// `resolution` points plus declared breakpoints (with one-sided offsets) and
// any extra points, keeps the upper convex hull of the graph, and evaluates
// by linear interpolation between hull vertices.
class UpperEnvelope {
public:
    explicit UpperEnvelope(const PiecewiseUtility& utility,
                           int resolution = kDefaultEnvelopeResolution,
                           std::vector<double> extra_points = {});

    EnvelopeResult evaluate(double query) const;
    double value(double query) const;

private:
    std::vector<double> xs_;
    std::vector<double> ys_;
};

// Concavification at a single query point; the query is always sampled, so
// envelope dominance holds there exactly.
EnvelopeResult cav_grid(const PiecewiseUtility& utility, double query,
                        int resolution = kDefaultEnvelopeResolution);
EnvelopeResult cav_grid(const PiecewiseUtility& utility, const Belief& query,
                        int resolution = kDefaultEnvelopeResolution);

// First point in (lo, hi] where `f` differs from value_lo, by bisection.
// Exact comparison is the right change detector for piecewise-constant
// utilities, whose plateaus repeat the same payoff bit for bit.
double locate_value_change(const std::function<double(double)>& f, double lo, double hi,
                           double value_lo);

struct SteppedEnvelopeResult {
    double value = 0.0;
    PosteriorDistribution support;
    // Switch point when the utility is a two-level upward step.
    std::optional<double> threshold;
    // |closed form - grid| when the step fast path was cross-checked.
    double grid_deviation = 0.0;
    // Located jump points, usable as breakpoints downstream.
    std::vector<double> jumps;
};

// Concavification tuned for piecewise-constant utilities: scans for value
// changes, solves a single upward step in closed form (two-point support),
// and falls back to the grid envelope for any other shape.
SteppedEnvelopeResult cav_stepped(const std::function<double(double)>& utility, double query,
                                  int resolution = kDefaultEnvelopeResolution,
                                  bool cross_check = true);

} // namespace persuasion
