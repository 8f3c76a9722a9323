#include "persuasion/rules.hpp"

#include "persuasion/errors.hpp"
#include "rng_util.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <utility>

namespace persuasion {

namespace {

// Exponentiates log weights stably and normalizes. Entries flagged false in
// `positive` are exact zeros (the continuity extension at the boundary).
Belief normalize_log_weights(const std::vector<double>& log_w, const std::vector<bool>& positive) {
    double max_log = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < log_w.size(); ++i) {
        if (positive[i]) {
            max_log = std::max(max_log, log_w[i]);
        }
    }
    if (max_log == -std::numeric_limits<double>::infinity()) {
        throw DomainError("no positive weight to normalize");
    }
    std::vector<double> w(log_w.size(), 0.0);
    for (std::size_t i = 0; i < log_w.size(); ++i) {
        if (positive[i]) {
            w[i] = std::exp(log_w[i] - max_log);
        }
    }
    return Belief::normalized(std::move(w));
}

void require_full_support_prior(const Belief& prior) {
    if (!prior.full_support()) {
        throw ValidationError("updating rules require a full-support prior");
    }
}

void check_positive_param(double value, const char* what) {
    if (!std::isfinite(value) || value <= 0.0) {
        throw ValidationError(std::string(what) + " must be positive and finite");
    }
}

double clamp01(double x) {
    return std::clamp(x, 0.0, 1.0);
}

// Posterior weight exponents (a, b) in weight = prior^a * likelihood^b.
std::pair<double, double> posterior_exponents(RuleKind kind, double alpha, double beta) {
    switch (kind) {
    case RuleKind::Geometric:
        return {1.0, alpha};
    case RuleKind::BaseRate:
        return {alpha, 1.0};
    case RuleKind::Grether:
        return {alpha, beta};
    default:
        return {1.0, 1.0};
    }
}

} // namespace

PowerHomeomorphism::PowerHomeomorphism(std::vector<double> gammas) : gammas_(std::move(gammas)) {
    if (gammas_.size() < 2) {
        throw ValidationError("power map needs at least two states");
    }
    for (double g : gammas_) {
        check_positive_param(g, "power map exponent");
    }
}

Belief PowerHomeomorphism::apply(const Belief& p) const {
    if (p.size() != gammas_.size()) {
        throw ValidationError("belief dimension does not match power map");
    }
    std::vector<double> log_w(p.size(), 0.0);
    std::vector<bool> positive(p.size(), false);
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] > 0.0) {
            positive[i] = true;
            log_w[i] = gammas_[i] * std::log(p[i]);
        }
    }
    return normalize_log_weights(log_w, positive);
}

Belief PowerHomeomorphism::invert(const Belief& x) const {
    if (x.size() != gammas_.size()) {
        throw ValidationError("belief dimension does not match power map");
    }

    // The preimage satisfies p(theta) = (Z * x(theta))^(1/gamma_theta) for the
    // unique normalizer Z > 0 making the entries sum to one. Zero entries stay
    // zero. Solve for L = log(Z) by safeguarded Newton iteration on the strictly
    // increasing map L -> sum_theta exp((L + log x(theta)) / gamma_theta).
    std::vector<std::size_t> active;
    std::vector<double> log_x(x.size(), 0.0);
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] > 0.0) {
            active.push_back(i);
            log_x[i] = std::log(x[i]);
        }
    }
    if (active.empty()) {
        throw DomainError("cannot invert the zero vector");
    }
    if (active.size() == 1) {
        return Belief::degenerate(active.front(), x.size());
    }

    const auto evaluate = [&](double L) {
        double h = 0.0;
        double dh = 0.0;
        for (std::size_t i : active) {
            const double term = std::exp((L + log_x[i]) / gammas_[i]);
            h += term;
            dh += term / gammas_[i];
        }
        return std::pair<double, double>{h, dh};
    };

    double lo = 0.0;
    double hi = 0.0;
    if (evaluate(0.0).first < 1.0) {
        hi = 1.0;
        while (evaluate(hi).first < 1.0) {
            lo = hi;
            hi *= 2.0;
            if (hi > 1e9) {
                throw NumericalFailure("power map inversion failed to bracket the normalizer");
            }
        }
    } else {
        lo = -1.0;
        while (evaluate(lo).first > 1.0) {
            hi = lo;
            lo *= 2.0;
            if (lo < -1e9) {
                throw NumericalFailure("power map inversion failed to bracket the normalizer");
            }
        }
    }

    double L = 0.5 * (lo + hi);
    for (int it = 0; it < 200; ++it) {
        const auto [h, dh] = evaluate(L);
        if (std::abs(h - 1.0) < 1e-15 || hi - lo < 1e-16 * (1.0 + std::abs(L))) {
            break;
        }
        if (h > 1.0) {
            hi = L;
        } else {
            lo = L;
        }
        double next = L - (h - 1.0) / std::max(dh, 1e-300);
        if (!(next > lo && next < hi)) {
            next = 0.5 * (lo + hi);
        }
        L = next;
    }

    std::vector<double> p(x.size(), 0.0);
    for (std::size_t i : active) {
        p[i] = std::exp((L + log_x[i]) / gammas_[i]);
    }
    return Belief::normalized(std::move(p));
}

UpdatingRule::UpdatingRule(RuleKind kind, double alpha, double beta,
                           std::optional<PowerHomeomorphism> f)
    : kind_(kind), alpha_(alpha), beta_(beta), homeo_(std::move(f)) {}

UpdatingRule UpdatingRule::bayesian() {
    return UpdatingRule(RuleKind::Bayesian, 1.0, 1.0, std::nullopt);
}

UpdatingRule UpdatingRule::linear(double alpha) {
    check_positive_param(alpha, "linear alpha");
    return UpdatingRule(RuleKind::Linear, alpha, 1.0, std::nullopt);
}

UpdatingRule UpdatingRule::geometric(double alpha) {
    check_positive_param(alpha, "geometric alpha");
    return UpdatingRule(RuleKind::Geometric, alpha, 1.0, std::nullopt);
}

UpdatingRule UpdatingRule::divisible(PowerHomeomorphism f) {
    return UpdatingRule(RuleKind::Divisible, 1.0, 1.0, std::move(f));
}

UpdatingRule UpdatingRule::base_rate(double alpha) {
    check_positive_param(alpha, "base-rate alpha");
    return UpdatingRule(RuleKind::BaseRate, alpha, 1.0, std::nullopt);
}

UpdatingRule UpdatingRule::grether(double alpha, double beta) {
    check_positive_param(alpha, "grether alpha");
    check_positive_param(beta, "grether beta");
    return UpdatingRule(RuleKind::Grether, alpha, beta, std::nullopt);
}

const PowerHomeomorphism& UpdatingRule::homeomorphism() const {
    if (!homeo_) {
        throw DomainError("rule has no homeomorphism");
    }
    return *homeo_;
}

std::string UpdatingRule::name() const {
    std::ostringstream out;
    switch (kind_) {
    case RuleKind::Bayesian:
        out << "bayesian";
        break;
    case RuleKind::Linear:
        out << "linear(alpha=" << alpha_ << ")";
        break;
    case RuleKind::Geometric:
        out << "geometric(alpha=" << alpha_ << ")";
        break;
    case RuleKind::BaseRate:
        out << "base_rate(alpha=" << alpha_ << ")";
        break;
    case RuleKind::Grether:
        out << "grether(alpha=" << alpha_ << ", beta=" << beta_ << ")";
        break;
    case RuleKind::Divisible:
        out << "divisible(gamma=[";
        for (std::size_t i = 0; i < homeo_->gammas().size(); ++i) {
            if (i > 0) {
                out << ", ";
            }
            out << homeo_->gammas()[i];
        }
        out << "])";
        break;
    }
    return out.str();
}

Belief UpdatingRule::update(const Experiment& exp, const Belief& prior, std::size_t signal) const {
    require_full_support_prior(prior);
    if (signal_marginal(exp, prior, signal) <= 0.0) {
        throw ZeroProbabilitySignal("signal has zero probability under this prior");
    }

    switch (kind_) {
    case RuleKind::Bayesian:
        return bayes_update(exp, prior, signal);
    case RuleKind::Linear: {
        if (prior.size() != 2) {
            throw UnsupportedStateCount("linear rule is defined for binary states only");
        }
        const double q = bayes_update(exp, prior, signal).scalar();
        return Belief::binary(clamp01(alpha_ * q + (1.0 - alpha_) * prior.scalar()));
    }
    case RuleKind::Divisible: {
        const Belief fp = homeo_->apply(prior);
        std::vector<double> log_w(prior.size(), 0.0);
        std::vector<bool> positive(prior.size(), false);
        for (std::size_t th = 0; th < prior.size(); ++th) {
            const double lik = exp(th, signal);
            if (fp[th] > 0.0 && lik > 0.0) {
                positive[th] = true;
                log_w[th] = std::log(fp[th]) + std::log(lik);
            }
        }
        return homeo_->invert(normalize_log_weights(log_w, positive));
    }
    default:
        break;
    }

    const auto [a, b] = posterior_exponents(kind_, alpha_, beta_);
    std::vector<double> log_w(prior.size(), 0.0);
    std::vector<bool> positive(prior.size(), false);
    for (std::size_t th = 0; th < prior.size(); ++th) {
        const double lik = exp(th, signal);
        if (lik > 0.0) {
            positive[th] = true;
            log_w[th] = a * std::log(prior[th]) + b * std::log(lik);
        }
    }
    return normalize_log_weights(log_w, positive);
}

Belief UpdatingRule::distort(const Belief& prior, const Belief& bayes_posterior) const {
    require_full_support_prior(prior);
    if (bayes_posterior.size() != prior.size()) {
        throw ValidationError("posterior dimension does not match prior");
    }

    switch (kind_) {
    case RuleKind::Bayesian:
        return bayes_posterior;
    case RuleKind::Linear: {
        if (prior.size() != 2) {
            throw UnsupportedStateCount("linear rule is defined for binary states only");
        }
        return Belief::binary(
            clamp01(alpha_ * bayes_posterior.scalar() + (1.0 - alpha_) * prior.scalar()));
    }
    case RuleKind::Divisible: {
        const Belief fp = homeo_->apply(prior);
        std::vector<double> log_w(prior.size(), 0.0);
        std::vector<bool> positive(prior.size(), false);
        for (std::size_t th = 0; th < prior.size(); ++th) {
            if (bayes_posterior[th] > 0.0) {
                positive[th] = true;
                log_w[th] = std::log(fp[th]) - std::log(prior[th]) + std::log(bayes_posterior[th]);
            }
        }
        return homeo_->invert(normalize_log_weights(log_w, positive));
    }
    default:
        break;
    }

    // weight(theta) = prior^(a-b) * bayes_posterior^b
    const auto [a, b] = posterior_exponents(kind_, alpha_, beta_);
    std::vector<double> log_w(prior.size(), 0.0);
    std::vector<bool> positive(prior.size(), false);
    for (std::size_t th = 0; th < prior.size(); ++th) {
        if (bayes_posterior[th] > 0.0) {
            positive[th] = true;
            log_w[th] = (a - b) * std::log(prior[th]) + b * std::log(bayes_posterior[th]);
        }
    }
    return normalize_log_weights(log_w, positive);
}

SystematicReport verify_systematic(const UpdatingRule& rule, const Belief& prior,
                                   std::size_t trials, std::uint64_t seed) {
    if (trials < 1) {
        throw ValidationError("verify_systematic needs at least one trial");
    }
    require_full_support_prior(prior);

    std::mt19937_64 rng = detail::seeded_engine(seed, 0);
    SystematicReport report{trials, 0.0};
    for (std::size_t t = 0; t < trials; ++t) {
        const std::size_t signals = 2 + std::size_t(rng() % 3);
        std::vector<std::vector<double>> rows(prior.size(), std::vector<double>(signals));
        for (auto& row : rows) {
            double sum = 0.0;
            for (double& v : row) {
                v = -std::log1p(-detail::canonical_double(rng));
                sum += v;
            }
            for (double& v : row) {
                v /= sum;
            }
        }
        const Experiment exp(std::move(rows));
        const std::size_t s = rng() % signals;
        if (signal_marginal(exp, prior, s) <= 0.0) {
            continue;
        }

        const Belief direct = rule.update(exp, prior, s);
        const Belief composed = rule.distort(prior, bayes_update(exp, prior, s));
        double deviation = 0.0;
        for (std::size_t i = 0; i < direct.size(); ++i) {
            deviation = std::max(deviation, std::abs(direct[i] - composed[i]));
        }
        report.max_deviation = std::max(report.max_deviation, deviation);
        if (deviation > kSystematicTol) {
            std::ostringstream msg;
            msg << rule.name() << " trial " << t << ": posterior map deviates from distorted Bayes"
                << " by " << deviation << " at signal " << s;
            throw PropertyViolation(msg.str());
        }
    }
    return report;
}

PosteriorDistribution induced_posterior_distribution(const Experiment& exp, const Belief& prior,
                                                     const UpdatingRule& rule) {
    std::vector<WeightedBelief> atoms;
    atoms.reserve(exp.n_signals());
    double total = 0.0;
    for (std::size_t s = 0; s < exp.n_signals(); ++s) {
        const double marginal = signal_marginal(exp, prior, s);
        if (marginal <= 0.0) {
            continue;
        }
        atoms.push_back(WeightedBelief{rule.update(exp, prior, s), marginal});
        total += marginal;
    }
    for (auto& atom : atoms) {
        atom.weight /= total;
    }
    return PosteriorDistribution(std::move(atoms));
}

} // namespace persuasion
