#include "persuasion/experiment.hpp"

#include "persuasion/errors.hpp"

#include <cmath>
#include <string>

namespace persuasion {

Experiment::Experiment(std::vector<std::vector<double>> conditionals)
    : conditionals_(std::move(conditionals)) {
    if (conditionals_.size() < 2) {
        throw ValidationError("experiment needs at least two states");
    }
    const std::size_t signals = conditionals_.front().size();
    if (signals < 1) {
        throw ValidationError("experiment needs at least one signal");
    }
    for (const auto& row : conditionals_) {
        if (row.size() != signals) {
            throw ValidationError("experiment rows have mixed signal counts");
        }
        double sum = 0.0;
        for (double v : row) {
            if (!std::isfinite(v) || v < -kBeliefSumTol || v > 1.0 + kBeliefSumTol) {
                throw ValidationError("experiment entry outside [0,1]");
            }
            sum += v;
        }
        if (std::abs(sum - 1.0) > kBeliefSumTol) {
            throw ValidationError("experiment row sums to " + std::to_string(sum) + ", expected 1");
        }
    }
}

Experiment Experiment::null_experiment(std::size_t state_count) {
    return Experiment(std::vector<std::vector<double>>(state_count, {1.0}));
}

Experiment Experiment::fully_revealing(std::size_t state_count) {
    std::vector<std::vector<double>> rows(state_count, std::vector<double>(state_count, 0.0));
    for (std::size_t i = 0; i < state_count; ++i) {
        rows[i][i] = 1.0;
    }
    return Experiment(std::move(rows));
}

double signal_marginal(const Experiment& exp, const Belief& prior, std::size_t signal) {
    if (prior.size() != exp.n_states()) {
        throw ValidationError("prior dimension does not match experiment state count");
    }
    if (signal >= exp.n_signals()) {
        throw ValidationError("signal index out of range");
    }
    double marginal = 0.0;
    for (std::size_t th = 0; th < exp.n_states(); ++th) {
        marginal += prior[th] * exp(th, signal);
    }
    return marginal;
}

Belief bayes_update(const Experiment& exp, const Belief& prior, std::size_t signal) {
    const double marginal = signal_marginal(exp, prior, signal);
    if (marginal <= 0.0) {
        throw ZeroProbabilitySignal("signal has zero probability under this prior");
    }
    std::vector<double> posterior(exp.n_states());
    for (std::size_t th = 0; th < exp.n_states(); ++th) {
        posterior[th] = prior[th] * exp(th, signal) / marginal;
    }
    return Belief::normalized(std::move(posterior));
}

} // namespace persuasion
