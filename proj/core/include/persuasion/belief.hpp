#pragma once

#include <cstddef>
#include <vector>

namespace persuasion {

// Absolute tolerance for probability vectors summing to one.
inline constexpr double kBeliefSumTol = 1e-12;

// Componentwise tolerance under which two beliefs count as the same atom.
inline constexpr double kAtomMergeTol = 1e-12;

// Probability vector over a finite state space.
class Belief {
public:
    explicit Belief(std::vector<double> probs);

    // Binary belief (1-q, q) where q is the probability of state 1.
    static Belief binary(double q);
    static Belief degenerate(std::size_t state, std::size_t state_count);
    // Divides a nonnegative weight vector by its sum.
    static Belief normalized(std::vector<double> weights);

    std::size_t size() const { return probs_.size(); }
    double operator[](std::size_t state) const { return probs_[state]; }
    const std::vector<double>& probs() const { return probs_; }

    bool is_binary() const { return probs_.size() == 2; }
    // Probability of state 1 in a binary belief.
    double scalar() const;

    bool full_support(double tol = 0.0) const;
    bool is_degenerate(double tol = 0.0) const;
    bool approx_equal(const Belief& other, double tol = kAtomMergeTol) const;

private:
    std::vector<double> probs_;
};

// Strict ordering comparing probabilities from the last state down, so binary
// beliefs sort ascending in the probability of state 1. Used to put posterior
// atoms in a canonical order.
bool canonical_less(const Belief& a, const Belief& b);

} // namespace persuasion
