#pragma once

#include "persuasion/belief.hpp"

#include <cstddef>
#include <vector>

namespace persuasion {

// States, common prior, actions, and both players' payoffs. The receiver's
// utility depends on action and state, the sender's on the action alone.
struct PersuasionEnvironment {
    Belief prior;
    std::vector<std::vector<double>> receiver_utility; // [action][state]
    std::vector<double> sender_utility;                // [action]

    std::size_t n_states() const { return prior.size(); }
    std::size_t n_actions() const { return receiver_utility.size(); }
    void validate() const;
};

// Binary benchmark: state 1 = guilty, action 1 = convict. The receiver wants
// the action to match the state; the sender is paid for conviction only.
PersuasionEnvironment judge_prosecutor(double guilt_prior);

// Judge-prosecutor variant whose receiver convicts at beliefs above
// `switch_point` instead of one half.
PersuasionEnvironment threshold_environment(double guilt_prior, double switch_point);

} // namespace persuasion
