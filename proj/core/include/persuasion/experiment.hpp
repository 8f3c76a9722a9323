#pragma once

#include "persuasion/belief.hpp"

#include <cstddef>
#include <vector>

namespace persuasion {

// Blackwell experiment: one signal distribution per state.
// conditionals()[state][signal] is the chance of seeing `signal` in `state`.
class Experiment {
public:
    explicit Experiment(std::vector<std::vector<double>> conditionals);

    static Experiment null_experiment(std::size_t state_count);
    static Experiment fully_revealing(std::size_t state_count);

    std::size_t n_states() const { return conditionals_.size(); }
    std::size_t n_signals() const { return conditionals_.front().size(); }
    double operator()(std::size_t state, std::size_t signal) const {
        return conditionals_[state][signal];
    }
    const std::vector<std::vector<double>>& conditionals() const { return conditionals_; }

private:
    std::vector<std::vector<double>> conditionals_;
};

// Unconditional probability of `signal` when states are drawn from `prior`.
double signal_marginal(const Experiment& exp, const Belief& prior, std::size_t signal);

// Bayesian posterior after observing `signal`.
Belief bayes_update(const Experiment& exp, const Belief& prior, std::size_t signal);

} // namespace persuasion
