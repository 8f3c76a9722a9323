#include "persuasion/belief.hpp"

#include "persuasion/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace persuasion {

namespace {

void check_probability_vector(const std::vector<double>& probs) {
    if (probs.size() < 2) {
        throw ValidationError("belief needs at least two states");
    }
    double sum = 0.0;
    for (double v : probs) {
        if (!std::isfinite(v)) {
            throw ValidationError("belief entry is not finite");
        }
        if (v < -kBeliefSumTol || v > 1.0 + kBeliefSumTol) {
            throw ValidationError("belief entry outside [0,1]: " + std::to_string(v));
        }
        sum += v;
    }
    if (std::abs(sum - 1.0) > kBeliefSumTol) {
        throw ValidationError("belief entries sum to " + std::to_string(sum) + ", expected 1");
    }
}

} // namespace

Belief::Belief(std::vector<double> probs) : probs_(std::move(probs)) {
    check_probability_vector(probs_);
    for (double& v : probs_) {
        v = std::clamp(v, 0.0, 1.0);
    }
}

Belief Belief::binary(double q) {
    if (!(q >= -kBeliefSumTol && q <= 1.0 + kBeliefSumTol)) {
        throw ValidationError("binary belief parameter outside [0,1]: " + std::to_string(q));
    }
    q = std::clamp(q, 0.0, 1.0);
    return Belief({1.0 - q, q});
}

Belief Belief::degenerate(std::size_t state, std::size_t state_count) {
    if (state >= state_count) {
        throw ValidationError("degenerate state index out of range");
    }
    std::vector<double> probs(state_count, 0.0);
    probs[state] = 1.0;
    return Belief(std::move(probs));
}

Belief Belief::normalized(std::vector<double> weights) {
    if (weights.size() < 2) {
        throw ValidationError("belief needs at least two states");
    }
    double sum = 0.0;
    for (double w : weights) {
        if (!std::isfinite(w) || w < 0.0) {
            throw DomainError("normalization requires nonnegative finite weights");
        }
        sum += w;
    }
    if (sum <= 0.0) {
        throw DomainError("cannot normalize a zero weight vector");
    }
    for (double& w : weights) {
        w /= sum;
    }
    return Belief(std::move(weights));
}

double Belief::scalar() const {
    if (probs_.size() != 2) {
        throw UnsupportedStateCount("scalar() requires a binary belief");
    }
    return probs_[1];
}

bool Belief::full_support(double tol) const {
    return std::all_of(probs_.begin(), probs_.end(), [tol](double v) { return v > tol; });
}

bool Belief::is_degenerate(double tol) const {
    return std::any_of(probs_.begin(), probs_.end(), [tol](double v) { return v >= 1.0 - tol; });
}

bool Belief::approx_equal(const Belief& other, double tol) const {
    if (probs_.size() != other.probs_.size()) {
        return false;
    }
    for (std::size_t i = 0; i < probs_.size(); ++i) {
        if (std::abs(probs_[i] - other.probs_[i]) > tol) {
            return false;
        }
    }
    return true;
}

bool canonical_less(const Belief& a, const Belief& b) {
    if (a.size() != b.size()) {
        return a.size() < b.size();
    }
    for (std::size_t i = a.size(); i-- > 0;) {
        if (a[i] != b[i]) {
            return a[i] < b[i];
        }
    }
    return false;
}

} // namespace persuasion
