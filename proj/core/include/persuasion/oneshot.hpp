#pragma once

#include "persuasion/belief.hpp"
#include "persuasion/envelope.hpp"
#include "persuasion/environment.hpp"
#include "persuasion/experiment.hpp"
#include "persuasion/posterior.hpp"
#include "persuasion/rules.hpp"

#include <cstddef>
#include <optional>

namespace persuasion {

// Expected-utility margin inside which the receiver counts actions as tied
// and picks the sender-preferred one.
inline constexpr double kTieTol = 1e-12;

// Margin separating "indifferent" from strict value comparisons.
inline constexpr double kClassificationMargin = 1e-6;

// Receiver's best response: maximizes expected receiver utility, ties broken
// toward the largest sender payoff (then lowest index).
std::size_t best_action(const PersuasionEnvironment& env, const Belief& belief);

// Sender payoff at the receiver's best response.
double indirect_utility(const PersuasionEnvironment& env, const Belief& belief);

// Sender payoff when the receiver holds the distorted version of a Bayesian
// posterior: indirect utility composed with the rule's distortion.
double modified_utility(const PersuasionEnvironment& env, const UpdatingRule& rule,
                        const Belief& prior, const Belief& bayes_posterior);

struct SolveOptions {
    int resolution = kDefaultEnvelopeResolution;
    // Grid for the per-atom second-stage envelopes in the two-step solver.
    int inner_resolution = 2001;
    // Verify closed-form fast paths against the grid envelope.
    bool cross_check = true;
    double classification_margin = kClassificationMargin;
    // When true the sender may stop after one update and the reported
    // two-step value is max(one-shot, two-step).
    bool allow_skip_second = false;
};

struct OneShotSolution {
    double value = 0.0;
    PosteriorDistribution distribution;  // over Bayesian posteriors
    Experiment experiment;
    // Switch point of the modified utility when it is a two-level upward step.
    std::optional<double> threshold;
    // |closed form - grid envelope| when the fast path was cross-checked.
    double grid_deviation = 0.0;
};

OneShotSolution solve_oneshot(const PersuasionEnvironment& env, const UpdatingRule& rule,
                              const SolveOptions& options = {});

} // namespace persuasion
