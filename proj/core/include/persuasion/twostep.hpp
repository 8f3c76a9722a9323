#pragma once

#include "persuasion/oneshot.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace persuasion {

// Receiver belief after the second update. The first signal moved her to
// D_p(q); the second signal has Bayesian posterior r from the sender's interim
// belief q. Reweighting r by D_p(q)/q yields the Bayesian posterior from her
// own interim belief, which the rule then distorts again.
Belief transform_distortion(const UpdatingRule& rule, const Belief& prior,
                            const Belief& first_posterior, const Belief& second_bayes);

// Sender payoff from the second stage as a function of the second-stage
// Bayesian posterior. Total in the degenerate corners: an absorbed receiver
// keeps her belief, and a degenerate sender interim belief admits only the
// null second experiment, which still passes through the mandatory update.
double second_stage_utility(const PersuasionEnvironment& env, const UpdatingRule& rule,
                            const Belief& prior, const Belief& first_posterior,
                            const Belief& second_bayes);

struct InterimSolution {
    double value = 0.0;
    // Distribution over second-stage Bayesian posteriors, plausible at the
    // sender's interim belief.
    PosteriorDistribution distribution;
    // Interim switch point when the stage utility is a two-level upward step.
    std::optional<double> threshold;
};

// Optimal second stage at the sender's interim belief q.
InterimSolution solve_interim(const PersuasionEnvironment& env, const UpdatingRule& rule,
                              const Belief& first_posterior, const SolveOptions& options = {});

double interim_value(const PersuasionEnvironment& env, const UpdatingRule& rule,
                     const Belief& first_posterior, const SolveOptions& options = {});

// Explicit two-step strategy: a first-stage posterior distribution plausible
// at the prior, plus one second-stage distribution per first-stage atom,
// each plausible at its atom.
struct TwoStepStrategy {
    PosteriorDistribution first;
    std::vector<PosteriorDistribution> second;
};

enum class Comparison { Better, Worse, Indifferent };

const char* to_string(Comparison comparison);

struct TwoStepSolution {
    double value = 0.0;
    double oneshot_value = 0.0;
    // value - oneshot_value before classification rounding.
    double margin = 0.0;
    Comparison versus_oneshot = Comparison::Indifferent;
    PosteriorDistribution first;
    // Interim solutions aligned with first.atoms().
    std::vector<InterimSolution> interim;
};

// Sender-optimal two-step persuasion: concavifies the interim value over
// first-stage posteriors and re-solves each supporting atom's second stage.
TwoStepSolution solve_twostep(const PersuasionEnvironment& env, const UpdatingRule& rule,
                              const SolveOptions& options = {});

// Exact nested expectation of the sender payoff under an explicit strategy.
double evaluate_strategy(const PersuasionEnvironment& env, const UpdatingRule& rule,
                         const TwoStepStrategy& strategy);

// Pairs a given first stage with the optimal second stage at each atom.
TwoStepStrategy make_strategy_with_optimal_second(const PersuasionEnvironment& env,
                                                  const UpdatingRule& rule,
                                                  const PosteriorDistribution& first,
                                                  const SolveOptions& options = {});

} // namespace persuasion
