#include "persuasion/oneshot.hpp"

#include "persuasion/errors.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <vector>

namespace persuasion {

std::size_t best_action(const PersuasionEnvironment& env, const Belief& belief) {
    if (belief.size() != env.n_states()) {
        throw ValidationError("belief dimension does not match environment");
    }
    double best_receiver = -std::numeric_limits<double>::infinity();
    std::vector<double> expected(env.n_actions());
    for (std::size_t a = 0; a < env.n_actions(); ++a) {
        double eu = 0.0;
        for (std::size_t th = 0; th < env.n_states(); ++th) {
            eu += env.receiver_utility[a][th] * belief[th];
        }
        expected[a] = eu;
        best_receiver = std::max(best_receiver, eu);
    }
    std::size_t chosen = env.n_actions();
    double chosen_sender = -std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < env.n_actions(); ++a) {
        if (expected[a] >= best_receiver - kTieTol && env.sender_utility[a] > chosen_sender) {
            chosen = a;
            chosen_sender = env.sender_utility[a];
        }
    }
    return chosen;
}

double indirect_utility(const PersuasionEnvironment& env, const Belief& belief) {
    return env.sender_utility[best_action(env, belief)];
}

double modified_utility(const PersuasionEnvironment& env, const UpdatingRule& rule,
                        const Belief& prior, const Belief& bayes_posterior) {
    return indirect_utility(env, rule.distort(prior, bayes_posterior));
}

OneShotSolution solve_oneshot(const PersuasionEnvironment& env, const UpdatingRule& rule,
                              const SolveOptions& options) {
    env.validate();
    if (env.n_states() != 2) {
        throw UnsupportedDimension("one-shot solver supports binary states only");
    }
    if (options.resolution < 2) {
        throw ValidationError("solver resolution must be at least 2");
    }
    const Belief& prior = env.prior;
    const double p = prior.scalar();

    const std::function<double(double)> vcheck = [&](double q) {
        return modified_utility(env, rule, prior, Belief::binary(q));
    };

    SteppedEnvelopeResult cav =
        cav_stepped(vcheck, p, options.resolution, options.cross_check);

    OneShotSolution solution{
        cav.value,
        PosteriorDistribution({{prior, 1.0}}),
        Experiment::null_experiment(2),
        cav.threshold,
        cav.grid_deviation,
    };
    const bool no_information =
        cav.support.size() == 1 && cav.support[0].belief.approx_equal(prior, kAtomMergeTol);
    if (!no_information) {
        solution.distribution = cav.support;
        solution.experiment = splitting_experiment(solution.distribution, prior);
    }
    return solution;
}

} // namespace persuasion
