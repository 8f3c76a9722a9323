#include "persuasion/posterior.hpp"

#include "persuasion/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace persuasion {

PosteriorDistribution::PosteriorDistribution(std::vector<WeightedBelief> atoms)
    : atoms_(std::move(atoms)) {
    if (atoms_.empty()) {
        throw ValidationError("posterior distribution needs at least one atom");
    }
    const std::size_t states = atoms_.front().belief.size();
    double total = 0.0;
    for (const auto& atom : atoms_) {
        if (atom.belief.size() != states) {
            throw ValidationError("posterior atoms have mixed state counts");
        }
        if (!std::isfinite(atom.weight) || atom.weight <= 0.0) {
            throw ValidationError("atom weights must be positive");
        }
        total += atom.weight;
    }
    if (std::abs(total - 1.0) > kBeliefSumTol) {
        throw ValidationError("atom weights sum to " + std::to_string(total) + ", expected 1");
    }

    std::sort(atoms_.begin(), atoms_.end(), [](const WeightedBelief& a, const WeightedBelief& b) {
        return canonical_less(a.belief, b.belief);
    });

    std::vector<WeightedBelief> merged;
    merged.reserve(atoms_.size());
    for (auto& atom : atoms_) {
        if (!merged.empty() && merged.back().belief.approx_equal(atom.belief, kAtomMergeTol)) {
            WeightedBelief& last = merged.back();
            const double weight = last.weight + atom.weight;
            std::vector<double> mix(states);
            for (std::size_t i = 0; i < states; ++i) {
                mix[i] = (last.weight * last.belief[i] + atom.weight * atom.belief[i]) / weight;
            }
            last = WeightedBelief{Belief::normalized(std::move(mix)), weight};
        } else {
            merged.push_back(std::move(atom));
        }
    }
    atoms_ = std::move(merged);
}

Belief PosteriorDistribution::mean() const {
    std::vector<double> mean(n_states(), 0.0);
    for (const auto& atom : atoms_) {
        for (std::size_t i = 0; i < mean.size(); ++i) {
            mean[i] += atom.weight * atom.belief[i];
        }
    }
    return Belief::normalized(std::move(mean));
}

bool PosteriorDistribution::is_plausible_at(const Belief& anchor, double tol) const {
    return mean().approx_equal(anchor, tol);
}

Experiment splitting_experiment(const PosteriorDistribution& target, const Belief& prior) {
    const std::size_t states = prior.size();
    if (target.n_states() != states) {
        throw ValidationError("target state count does not match prior");
    }
    if (!target.is_plausible_at(prior)) {
        throw NotBayesPlausible("target distribution mean does not match the prior");
    }
    for (const auto& atom : target.atoms()) {
        for (std::size_t th = 0; th < states; ++th) {
            if (prior[th] <= 0.0 && atom.weight * atom.belief[th] > 0.0) {
                throw AbsoluteContinuityViolated(
                    "atom places mass on a state the prior excludes");
            }
        }
    }

    std::vector<std::vector<double>> rows(states, std::vector<double>(target.size(), 0.0));
    for (std::size_t th = 0; th < states; ++th) {
        double row_sum = 0.0;
        if (prior[th] > 0.0) {
            for (std::size_t k = 0; k < target.size(); ++k) {
                rows[th][k] = target[k].weight * target[k].belief[th] / prior[th];
                row_sum += rows[th][k];
            }
        }
        if (row_sum <= 0.0) {
            // State carries (essentially) no prior mass; any conditional works.
            std::fill(rows[th].begin(), rows[th].end(), 1.0 / double(target.size()));
        } else {
            for (double& v : rows[th]) {
                v /= row_sum;
            }
        }
    }
    return Experiment(std::move(rows));
}

PosteriorDistribution induced_posterior_distribution(const Experiment& exp, const Belief& prior) {
    std::vector<WeightedBelief> atoms;
    atoms.reserve(exp.n_signals());
    double total = 0.0;
    for (std::size_t s = 0; s < exp.n_signals(); ++s) {
        const double marginal = signal_marginal(exp, prior, s);
        if (marginal <= 0.0) {
            continue;
        }
        atoms.push_back(WeightedBelief{bayes_update(exp, prior, s), marginal});
        total += marginal;
    }
    for (auto& atom : atoms) {
        atom.weight /= total;
    }
    return PosteriorDistribution(std::move(atoms));
}

} // namespace persuasion
