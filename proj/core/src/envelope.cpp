#include "persuasion/envelope.hpp"

#include "persuasion/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace persuasion {

namespace {

PosteriorDistribution two_point_support(double x_lo, double w_lo, double x_hi, double w_hi) {
    std::vector<WeightedBelief> atoms;
    if (w_lo > 0.0) {
        atoms.push_back(WeightedBelief{Belief::binary(x_lo), w_lo});
    }
    if (w_hi > 0.0) {
        atoms.push_back(WeightedBelief{Belief::binary(x_hi), w_hi});
    }
    return PosteriorDistribution(std::move(atoms));
}

} // namespace

EnvelopeResult cav_threshold(double threshold, double query) {
    if (!(threshold > 0.0 && threshold <= 1.0)) {
        throw InvalidThreshold("threshold must lie in (0,1], got " + std::to_string(threshold));
    }
    if (!(query >= 0.0 && query <= 1.0)) {
        throw ValidationError("query belief outside [0,1]");
    }
    if (query >= threshold) {
        return EnvelopeResult{1.0, PosteriorDistribution({{Belief::binary(query), 1.0}})};
    }
    const double w_hi = query / threshold;
    return EnvelopeResult{w_hi, two_point_support(0.0, 1.0 - w_hi, threshold, w_hi)};
}

UpperEnvelope::UpperEnvelope(const PiecewiseUtility& utility, int resolution,
                             std::vector<double> extra_points) {
    if (resolution < 2) {
        throw ValidationError("envelope resolution must be at least 2");
    }
    if (!utility.eval) {
        throw ValidationError("utility has no evaluation callback");
    }

    std::vector<double> xs;
    xs.reserve(std::size_t(resolution) + 3 * utility.breakpoints.size() + extra_points.size());
    for (int i = 0; i < resolution; ++i) {
        xs.push_back(double(i) / double(resolution - 1));
    }
    const auto push_inside = [&xs](double x) {
        if (x >= 0.0 && x <= 1.0) {
            xs.push_back(x);
        }
    };
    for (double b : utility.breakpoints) {
        if (!(b >= 0.0 && b <= 1.0)) {
            throw ValidationError("breakpoint outside [0,1]");
        }
        push_inside(b - kBreakpointOffset);
        push_inside(b);
        push_inside(b + kBreakpointOffset);
    }
    for (double x : extra_points) {
        if (!(x >= 0.0 && x <= 1.0)) {
            throw ValidationError("envelope sample outside [0,1]");
        }
        push_inside(x);
    }
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

    std::vector<double> ys(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        ys[i] = utility.eval(xs[i]);
        if (!std::isfinite(ys[i])) {
            throw NumericalFailure("utility is not finite at " + std::to_string(xs[i]));
        }
    }

    // Monotone-chain upper hull over the sampled graph; popping on collinear
    // points keeps the vertex list minimal.
    std::vector<std::size_t> hull;
    hull.reserve(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        while (hull.size() >= 2) {
            const std::size_t a = hull[hull.size() - 2];
            const std::size_t b = hull.back();
            const double cross =
                (xs[b] - xs[a]) * (ys[i] - ys[a]) - (ys[b] - ys[a]) * (xs[i] - xs[a]);
            if (cross >= 0.0) {
                hull.pop_back();
            } else {
                break;
            }
        }
        hull.push_back(i);
    }

    xs_.reserve(hull.size());
    ys_.reserve(hull.size());
    for (std::size_t i : hull) {
        xs_.push_back(xs[i]);
        ys_.push_back(ys[i]);
    }
}

EnvelopeResult UpperEnvelope::evaluate(double query) const {
    if (!(query >= -kBeliefSumTol && query <= 1.0 + kBeliefSumTol)) {
        throw ValidationError("query belief outside [0,1]");
    }
    query = std::clamp(query, 0.0, 1.0);

    const auto it = std::lower_bound(xs_.begin(), xs_.end(), query);
    const std::size_t hi = std::size_t(it - xs_.begin());
    if (hi < xs_.size() && xs_[hi] == query) {
        return EnvelopeResult{ys_[hi],
                              PosteriorDistribution({{Belief::binary(query), 1.0}})};
    }
    // xs_ spans [0,1], so an off-vertex query always falls inside a segment.
    const std::size_t lo = hi - 1;
    const double lambda = (query - xs_[lo]) / (xs_[hi] - xs_[lo]);
    const double value = (1.0 - lambda) * ys_[lo] + lambda * ys_[hi];
    return EnvelopeResult{value, two_point_support(xs_[lo], 1.0 - lambda, xs_[hi], lambda)};
}

double UpperEnvelope::value(double query) const {
    if (!(query >= -kBeliefSumTol && query <= 1.0 + kBeliefSumTol)) {
        throw ValidationError("query belief outside [0,1]");
    }
    query = std::clamp(query, 0.0, 1.0);

    const auto it = std::lower_bound(xs_.begin(), xs_.end(), query);
    const std::size_t hi = std::size_t(it - xs_.begin());
    if (hi < xs_.size() && xs_[hi] == query) {
        return ys_[hi];
    }
    const std::size_t lo = hi - 1;
    const double lambda = (query - xs_[lo]) / (xs_[hi] - xs_[lo]);
    return (1.0 - lambda) * ys_[lo] + lambda * ys_[hi];
}

EnvelopeResult cav_grid(const PiecewiseUtility& utility, double query, int resolution) {
    return UpperEnvelope(utility, resolution, {query}).evaluate(query);
}

EnvelopeResult cav_grid(const PiecewiseUtility& utility, const Belief& query, int resolution) {
    if (!query.is_binary()) {
        throw UnsupportedDimension("grid concavification supports binary states only");
    }
    return cav_grid(utility, query.scalar(), resolution);
}

double locate_value_change(const std::function<double(double)>& f, double lo, double hi,
                           double value_lo) {
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) {
            break;
        }
        if (f(mid) == value_lo) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return hi;
}

SteppedEnvelopeResult cav_stepped(const std::function<double(double)>& utility, double query,
                                  int resolution, bool cross_check) {
    if (!utility) {
        throw ValidationError("utility has no evaluation callback");
    }
    if (resolution < 2) {
        throw ValidationError("envelope resolution must be at least 2");
    }
    if (!(query >= 0.0 && query <= 1.0)) {
        throw ValidationError("query belief outside [0,1]");
    }

    // Scan for value changes; plateaus of a piecewise-constant utility repeat
    // the same payoff bit for bit, so adjacent samples flag the jump cells.
    const std::size_t jump_cap = 64;
    std::vector<double> jumps;
    std::vector<double> distinct;
    double x_prev = 0.0;
    double v_prev = utility(0.0);
    distinct.push_back(v_prev);
    for (int i = 1; i < resolution; ++i) {
        const double x = double(i) / double(resolution - 1);
        const double v = utility(x);
        if (v != v_prev && jumps.size() < jump_cap) {
            jumps.push_back(locate_value_change(utility, x_prev, x, v_prev));
        }
        if (std::find(distinct.begin(), distinct.end(), v) == distinct.end()) {
            distinct.push_back(v);
        }
        x_prev = x;
        v_prev = v;
    }

    if (distinct.size() == 1) {
        return SteppedEnvelopeResult{distinct.front(),
                                     PosteriorDistribution({{Belief::binary(query), 1.0}}),
                                     std::nullopt, 0.0, jumps};
    }

    const double v_at_0 = utility(0.0);
    const double v_at_1 = utility(1.0);
    if (distinct.size() == 2 && jumps.size() == 1 && v_at_0 < v_at_1) {
        const double threshold = jumps.front();
        SteppedEnvelopeResult result{0.0,
                                     PosteriorDistribution({{Belief::binary(query), 1.0}}),
                                     threshold, 0.0, jumps};
        if (query >= threshold) {
            result.value = v_at_1;
        } else {
            const double w_hi = query / threshold;
            result.value = v_at_0 + (v_at_1 - v_at_0) * w_hi;
            result.support = two_point_support(0.0, 1.0 - w_hi, threshold, w_hi);
        }
        if (cross_check) {
            const EnvelopeResult grid = cav_grid(PiecewiseUtility{utility, jumps}, query, resolution);
            result.grid_deviation = std::abs(result.value - grid.value);
        }
        return result;
    }

    const EnvelopeResult grid = cav_grid(PiecewiseUtility{utility, jumps}, query, resolution);
    return SteppedEnvelopeResult{grid.value, grid.support, std::nullopt, 0.0, jumps};
}

} // namespace persuasion
