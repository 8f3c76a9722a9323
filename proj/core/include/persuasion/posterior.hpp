#pragma once

#include "persuasion/belief.hpp"
#include "persuasion/experiment.hpp"

#include <cstddef>
#include <vector>

namespace persuasion {

// Tolerance for the mean of a posterior distribution matching its anchor.
inline constexpr double kPlausibilityTol = 1e-10;

struct WeightedBelief {
    Belief belief;
    double weight;
};

// Finitely supported distribution over posterior beliefs. Construction sorts
// atoms canonically and merges beliefs that coincide within kAtomMergeTol, so
// equal inputs always serialize and compare identically.
class PosteriorDistribution {
public:
    explicit PosteriorDistribution(std::vector<WeightedBelief> atoms);

    const std::vector<WeightedBelief>& atoms() const { return atoms_; }
    std::size_t size() const { return atoms_.size(); }
    const WeightedBelief& operator[](std::size_t i) const { return atoms_[i]; }
    std::size_t n_states() const { return atoms_.front().belief.size(); }

    Belief mean() const;
    bool is_plausible_at(const Belief& anchor, double tol = kPlausibilityTol) const;

private:
    std::vector<WeightedBelief> atoms_;
};

// Experiment with one signal per atom realizing `target` from `prior`:
// signal k gets conditional probability weight_k * q_k(state) / prior(state).
Experiment splitting_experiment(const PosteriorDistribution& target, const Belief& prior);

// Distribution of Bayesian posteriors induced by an experiment. Signals with
// zero marginal probability are dropped; equal posteriors merge.
PosteriorDistribution induced_posterior_distribution(const Experiment& exp, const Belief& prior);

} // namespace persuasion
