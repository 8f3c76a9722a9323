#include "persuasion/twostep.hpp"

#include "persuasion/errors.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <utility>
#include <vector>

namespace persuasion {

namespace {

// Receiver belief after updating from her interim belief on the second
// signal. The signal likelihoods behind a Bayesian posterior r from the
// sender's interim belief q are proportional to r/q, so rescaling by the
// receiver's interim belief gives her Bayesian posterior before distortion.
Belief second_update(const UpdatingRule& rule, const Belief& receiver_interim,
                     const Belief& first_posterior, const Belief& second_bayes) {
    std::vector<double> weights(second_bayes.size());
    for (std::size_t th = 0; th < weights.size(); ++th) {
        weights[th] = second_bayes[th] * receiver_interim[th] / first_posterior[th];
    }
    return rule.distort(receiver_interim, Belief::normalized(std::move(weights)));
}

double stage_payoff(const PersuasionEnvironment& env, const UpdatingRule& rule,
                    const Belief& receiver_interim, const Belief& first_posterior,
                    const Belief& second_bayes) {
    if (receiver_interim.is_degenerate()) {
        // The receiver is absorbed; no second signal moves her.
        return indirect_utility(env, receiver_interim);
    }
    if (!receiver_interim.full_support()) {
        throw DegenerateInterimBelief("receiver interim belief lacks full support");
    }
    if (!first_posterior.full_support()) {
        // Only the null second experiment is plausible here, and it still
        // passes through the mandatory second update.
        return indirect_utility(env, rule.distort(receiver_interim, receiver_interim));
    }
    return indirect_utility(env,
                            second_update(rule, receiver_interim, first_posterior, second_bayes));
}

} // namespace

Belief transform_distortion(const UpdatingRule& rule, const Belief& prior,
                            const Belief& first_posterior, const Belief& second_bayes) {
    if (prior.size() != first_posterior.size() || prior.size() != second_bayes.size()) {
        throw ValidationError("belief dimensions do not match");
    }
    if (!first_posterior.full_support()) {
        throw DegenerateInterimBelief("sender interim belief lacks full support");
    }
    if (rule.kind() == RuleKind::Bayesian) {
        // Bayesian updates compose exactly, so the transform is the identity.
        return second_bayes;
    }
    const Belief receiver_interim = rule.distort(prior, first_posterior);
    if (!receiver_interim.full_support()) {
        throw DegenerateInterimBelief("receiver interim belief lacks full support");
    }
    return second_update(rule, receiver_interim, first_posterior, second_bayes);
}

double second_stage_utility(const PersuasionEnvironment& env, const UpdatingRule& rule,
                            const Belief& prior, const Belief& first_posterior,
                            const Belief& second_bayes) {
    const Belief receiver_interim = rule.distort(prior, first_posterior);
    return stage_payoff(env, rule, receiver_interim, first_posterior, second_bayes);
}

InterimSolution solve_interim(const PersuasionEnvironment& env, const UpdatingRule& rule,
                              const Belief& first_posterior, const SolveOptions& options) {
    env.validate();
    if (env.n_states() != 2) {
        throw UnsupportedDimension("interim solver supports binary states only");
    }
    if (first_posterior.size() != 2) {
        throw ValidationError("interim belief dimension does not match environment");
    }
    const Belief receiver_interim = rule.distort(env.prior, first_posterior);
    if (receiver_interim.is_degenerate() || !first_posterior.full_support()) {
        const double value =
            stage_payoff(env, rule, receiver_interim, first_posterior, first_posterior);
        return InterimSolution{value, PosteriorDistribution({{first_posterior, 1.0}}),
                               std::nullopt};
    }

    const auto stage = [&](double r) {
        return stage_payoff(env, rule, receiver_interim, first_posterior, Belief::binary(r));
    };
    SteppedEnvelopeResult cav =
        cav_stepped(stage, first_posterior.scalar(), options.resolution, options.cross_check);
    return InterimSolution{cav.value, std::move(cav.support), cav.threshold};
}

double interim_value(const PersuasionEnvironment& env, const UpdatingRule& rule,
                     const Belief& first_posterior, const SolveOptions& options) {
    return solve_interim(env, rule, first_posterior, options).value;
}

namespace {

// Interim value tuned for the outer sweep: solves the common two-level
// upward step by bisection alone and verifies the shape with spot probes,
// deferring anything else to the thorough interim solver.
double fast_interim_value(const PersuasionEnvironment& env, const UpdatingRule& rule, double q,
                          const SolveOptions& fallback) {
    const Belief qb = Belief::binary(q);
    const Belief receiver_interim = rule.distort(env.prior, qb);
    if (receiver_interim.is_degenerate() || !qb.full_support()) {
        return stage_payoff(env, rule, receiver_interim, qb, qb);
    }
    const auto stage = [&](double r) {
        return stage_payoff(env, rule, receiver_interim, qb, Belief::binary(r));
    };
    const double lo = stage(0.0);
    const double hi = stage(1.0);
    if (lo < hi) {
        const double threshold = locate_value_change(stage, 0.0, 1.0, lo);
        if (stage(0.5 * threshold) == lo && stage(0.5 * (threshold + 1.0)) == hi) {
            return q >= threshold ? hi : lo + (hi - lo) * (q / threshold);
        }
    } else if (lo == hi) {
        bool constant = true;
        for (double r : {0.25, 0.5, 0.75}) {
            if (stage(r) != lo) {
                constant = false;
                break;
            }
        }
        if (constant) {
            return lo;
        }
    }
    return solve_interim(env, rule, qb, fallback).value;
}

} // namespace

TwoStepSolution solve_twostep(const PersuasionEnvironment& env, const UpdatingRule& rule,
                              const SolveOptions& options) {
    env.validate();
    if (env.n_states() != 2) {
        throw UnsupportedDimension("two-step solver supports binary states only");
    }
    if (options.resolution < 2 || options.inner_resolution < 2) {
        throw ValidationError("solver resolution must be at least 2");
    }
    const double p = env.prior.scalar();

    SolveOptions fallback = options;
    fallback.resolution = options.inner_resolution;
    fallback.cross_check = false;

    const std::function<double(double)> stage_value = [&](double q) {
        return fast_interim_value(env, rule, q, fallback);
    };

    const OneShotSolution oneshot = solve_oneshot(env, rule, options);

    // The interim value saturates at its maximum past some first-stage
    // posterior; that point is a kink of the outer utility, so locate it and
    // declare it as a breakpoint. The one-shot switch point is another kink
    // candidate whenever it exists.
    std::vector<double> breakpoints;
    {
        const int coarse = 513;
        std::vector<double> sampled(coarse);
        double vmax = -std::numeric_limits<double>::infinity();
        for (int i = 0; i < coarse; ++i) {
            sampled[i] = stage_value(double(i) / double(coarse - 1));
            vmax = std::max(vmax, sampled[i]);
        }
        const double cutoff = vmax - 1e-12;
        for (int i = 1; i < coarse; ++i) {
            if (sampled[i] >= cutoff && sampled[i - 1] < cutoff) {
                double lo = double(i - 1) / double(coarse - 1);
                double hi = double(i) / double(coarse - 1);
                for (int iter = 0; iter < 200; ++iter) {
                    const double mid = 0.5 * (lo + hi);
                    if (mid <= lo || mid >= hi) {
                        break;
                    }
                    if (stage_value(mid) >= cutoff) {
                        hi = mid;
                    } else {
                        lo = mid;
                    }
                }
                breakpoints.push_back(hi);
                break;
            }
        }
    }
    if (oneshot.threshold) {
        breakpoints.push_back(*oneshot.threshold);
    }

    const UpperEnvelope outer(PiecewiseUtility{stage_value, breakpoints}, options.resolution,
                              {p});
    const EnvelopeResult at_prior = outer.evaluate(p);

    double value = 0.0;
    std::vector<InterimSolution> interim;
    interim.reserve(at_prior.support.size());
    for (const auto& atom : at_prior.support.atoms()) {
        InterimSolution stage = solve_interim(env, rule, atom.belief, options);
        value += atom.weight * stage.value;
        interim.push_back(std::move(stage));
    }

    if (options.allow_skip_second && oneshot.value > value) {
        value = oneshot.value;
    }
    const double margin = value - oneshot.value;
    Comparison versus = Comparison::Indifferent;
    if (margin > options.classification_margin) {
        versus = Comparison::Better;
    } else if (margin < -options.classification_margin) {
        versus = Comparison::Worse;
    }

    return TwoStepSolution{value,   oneshot.value,         margin,
                           versus,  at_prior.support,      std::move(interim)};
}

double evaluate_strategy(const PersuasionEnvironment& env, const UpdatingRule& rule,
                         const TwoStepStrategy& strategy) {
    env.validate();
    if (strategy.second.size() != strategy.first.size()) {
        throw ValidationError("second stages must align with first-stage atoms");
    }
    if (!strategy.first.is_plausible_at(env.prior)) {
        throw NotBayesPlausible("first stage is not plausible at the prior");
    }
    double total = 0.0;
    for (std::size_t k = 0; k < strategy.first.size(); ++k) {
        const WeightedBelief& atom = strategy.first[k];
        const PosteriorDistribution& stage = strategy.second[k];
        if (!stage.is_plausible_at(atom.belief)) {
            throw NotBayesPlausible("second stage is not plausible at its interim belief");
        }
        const Belief receiver_interim = rule.distort(env.prior, atom.belief);
        double stage_value = 0.0;
        for (const auto& second : stage.atoms()) {
            stage_value += second.weight *
                           stage_payoff(env, rule, receiver_interim, atom.belief, second.belief);
        }
        total += atom.weight * stage_value;
    }
    return total;
}

TwoStepStrategy make_strategy_with_optimal_second(const PersuasionEnvironment& env,
                                                  const UpdatingRule& rule,
                                                  const PosteriorDistribution& first,
                                                  const SolveOptions& options) {
    std::vector<PosteriorDistribution> second;
    second.reserve(first.size());
    for (const auto& atom : first.atoms()) {
        second.push_back(solve_interim(env, rule, atom.belief, options).distribution);
    }
    return TwoStepStrategy{first, std::move(second)};
}

const char* to_string(Comparison comparison) {
    switch (comparison) {
        case Comparison::Better:
            return "better";
        case Comparison::Worse:
            return "worse";
        default:
            return "indifferent";
    }
}

} // namespace persuasion
