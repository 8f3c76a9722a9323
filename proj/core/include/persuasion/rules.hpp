#pragma once

#include "persuasion/belief.hpp"
#include "persuasion/experiment.hpp"
#include "persuasion/posterior.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace persuasion {

// Tolerance for the posterior-equals-distorted-Bayesian property.
inline constexpr double kSystematicTol = 1e-10;

// Componentwise power map F(p) proportional to p(theta)^gamma_theta with
// renormalization. Bijective on the simplex, preserves full support, and has
// the exact inverse with exponents 1/gamma_theta.
class PowerHomeomorphism {
public:
    explicit PowerHomeomorphism(std::vector<double> gammas);

    const std::vector<double>& gammas() const { return gammas_; }
    std::size_t n_states() const { return gammas_.size(); }
    Belief apply(const Belief& p) const;
    Belief invert(const Belief& x) const;

private:
    std::vector<double> gammas_;
};

enum class RuleKind { Bayesian, Linear, Geometric, Divisible, BaseRate, Grether };

// Receiver updating rule: a posterior map over (experiment, prior, signal)
// together with the distortion D_p it applies to the Bayesian posterior.
class UpdatingRule {
public:
    static UpdatingRule bayesian();
    static UpdatingRule linear(double alpha);
    static UpdatingRule geometric(double alpha);
    static UpdatingRule divisible(PowerHomeomorphism f);
    static UpdatingRule base_rate(double alpha);
    static UpdatingRule grether(double alpha, double beta);

    RuleKind kind() const { return kind_; }
    double alpha() const { return alpha_; }
    double beta() const { return beta_; }
    const PowerHomeomorphism& homeomorphism() const;
    std::string name() const;

    // Receiver posterior after observing `signal`.
    Belief update(const Experiment& exp, const Belief& prior, std::size_t signal) const;

    // Distortion D_p applied to a Bayesian posterior. Total on the closed
    // simplex: boundary posteriors extend by continuity (power-form rules keep
    // zero coordinates at zero; the linear rule clamps).
    Belief distort(const Belief& prior, const Belief& bayes_posterior) const;

private:
    UpdatingRule(RuleKind kind, double alpha, double beta, std::optional<PowerHomeomorphism> f);

    RuleKind kind_;
    double alpha_;
    double beta_;
    std::optional<PowerHomeomorphism> homeo_;
};

struct SystematicReport {
    std::size_t trials = 0;
    double max_deviation = 0.0;
};

// Draws random experiments and signals and checks that update() equals
// distort() of the Bayesian posterior. Throws PropertyViolation with the
// counterexample if any deviation exceeds kSystematicTol.
SystematicReport verify_systematic(const UpdatingRule& rule, const Belief& prior,
                                   std::size_t trials, std::uint64_t seed);

// Distribution of receiver posteriors induced by an experiment, each atom
// weighted by the Bayesian signal marginal.
PosteriorDistribution induced_posterior_distribution(const Experiment& exp, const Belief& prior,
                                                     const UpdatingRule& rule);

} // namespace persuasion
