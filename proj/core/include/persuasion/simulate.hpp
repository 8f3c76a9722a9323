#pragma once

#include "persuasion/environment.hpp"
#include "persuasion/experiment.hpp"
#include "persuasion/rules.hpp"
#include "persuasion/twostep.hpp"

#include <cstddef>
#include <cstdint>
#include <variant>
#include <vector>

namespace persuasion {

// Monte Carlo run of the full persuasion protocol. The strategy is either a
// single experiment, after which the receiver acts, or a two-step strategy
// materialized into experiments via splitting_experiment.
struct SimConfig {
    PersuasionEnvironment environment;
    UpdatingRule rule;
    std::variant<Experiment, TwoStepStrategy> strategy;
    std::uint64_t replications = 1;
    std::uint64_t seed = 0;
    // 0 picks the hardware concurrency.
    unsigned threads = 0;
    // At most this many replications record their belief path.
    std::size_t belief_log_cap = 1000;
};

struct BeliefSample {
    std::size_t state = 0;
    std::size_t action = 0;
    // Receiver beliefs in protocol order, one per update performed.
    std::vector<Belief> path;
};

struct SimResult {
    double mean = 0.0;
    // Sample standard deviation over the square root of the replication count.
    double std_error = 0.0;
    // Raw outcome counts indexed [state][action].
    std::vector<std::vector<std::uint64_t>> action_counts;
    std::vector<BeliefSample> belief_paths;
    std::uint64_t replications = 0;
    std::uint64_t seed = 0;
};

// Runs the protocol `replications` times: draw a state from the prior, a
// first signal from the experiment, the receiver's interim belief through the
// rule, then (two-step only) a second signal from the realized atom's
// experiment and the receiver's final belief from her interim prior. Results
// replay bit-identically for a fixed seed regardless of thread count.
SimResult simulate(const SimConfig& config);

} // namespace persuasion
