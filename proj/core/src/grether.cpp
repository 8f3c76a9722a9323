#include "persuasion/grether.hpp"

#include "persuasion/environment.hpp"
#include "persuasion/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace persuasion {

namespace {

void check_exponents(double alpha, double beta) {
    if (!(alpha > 0.0) || !(beta > 0.0) || !std::isfinite(alpha) || !std::isfinite(beta)) {
        throw DomainError("rule exponents must be positive and finite");
    }
}

void check_interior(double x, const char* what) {
    if (!(x > 0.0 && x < 1.0)) {
        throw DomainError(std::string(what) + " must lie in (0,1)");
    }
}

double log_odds(double x) {
    return std::log1p(-x) - std::log(x);
}

double logistic_of_log_odds(double z) {
    return 1.0 / (1.0 + std::exp(-z));
}

} // namespace

double interim_threshold(double alpha, double beta, double prior, double first_posterior) {
    check_exponents(alpha, beta);
    check_interior(prior, "prior");
    check_interior(first_posterior, "first-stage posterior");
    const double z = (alpha * (alpha - beta) / beta) * log_odds(prior) +
                     (alpha - 1.0) * log_odds(first_posterior);
    return logistic_of_log_odds(z);
}

double outer_threshold(double alpha, double beta, double prior) {
    check_exponents(alpha, beta);
    check_interior(prior, "prior");
    return logistic_of_log_odds(((alpha - beta) / beta) * log_odds(prior));
}

GretherValues closed_form_values(double alpha, double beta, double prior) {
    check_exponents(alpha, beta);
    check_interior(prior, "prior");
    if (prior >= 0.5) {
        return GretherValues{1.0, 1.0};
    }
    const double log_ratio = -log_odds(prior);
    return GretherValues{
        prior * (1.0 + std::exp((alpha * alpha / beta - 1.0) * log_ratio)),
        prior * (1.0 + std::exp((alpha / beta - 1.0) * log_ratio)),
    };
}

GretherReport comparison_report(double alpha, double beta, double prior,
                                const SolveOptions& options) {
    check_exponents(alpha, beta);
    if (!(prior > 0.0 && prior < 0.5)) {
        throw DomainError("comparison report requires a prior in (0, 0.5)");
    }

    GretherReport report;
    report.alpha = alpha;
    report.beta = beta;
    report.prior = prior;
    report.switch_point = outer_threshold(alpha, beta, prior);

    const GretherValues values = closed_form_values(alpha, beta, prior);
    report.interim_value_at_prior = values.interim_value_at_prior;
    report.oneshot_value = values.oneshot_value;

    const double gap = values.interim_value_at_prior - values.oneshot_value;
    report.sign_at_prior = gap > 1e-9 ? 1 : (gap < -1e-9 ? -1 : 0);
    report.sign_comparison = report.sign_at_prior > 0   ? Comparison::Better
                             : report.sign_at_prior < 0 ? Comparison::Worse
                                                        : Comparison::Indifferent;

    const PersuasionEnvironment env = judge_prosecutor(prior);
    const TwoStepSolution solution =
        solve_twostep(env, UpdatingRule::grether(alpha, beta), options);
    report.twostep_value = solution.value;
    report.computed_comparison = solution.versus_oneshot;
    report.concordant = report.computed_comparison == report.sign_comparison;

    // Below the switch point the interim value is q over the interim switch
    // point at q; probe its curvature with centered second differences.
    const double qstar = report.switch_point;
    const double h = qstar / 1000.0;
    const auto f = [&](double q) { return q / interim_threshold(alpha, beta, prior, q); };
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (int i = 1; i <= 25; ++i) {
        const double q = qstar * double(i) / 26.0;
        const double estimate = (f(q + h) - 2.0 * f(q) + f(q - h)) / (h * h);
        lo = std::min(lo, estimate);
        hi = std::max(hi, estimate);
    }
    report.min_second_difference = lo;
    report.max_second_difference = hi;
    if (hi <= kCurvatureTol && lo >= -kCurvatureTol) {
        report.curvature = Curvature::Linear;
    } else if (lo >= -kCurvatureTol) {
        report.curvature = Curvature::Convex;
    } else if (hi <= kCurvatureTol) {
        report.curvature = Curvature::Concave;
    } else {
        report.curvature = Curvature::Mixed;
    }
    return report;
}

const char* to_string(Curvature curvature) {
    switch (curvature) {
        case Curvature::Concave:
            return "concave";
        case Curvature::Linear:
            return "linear";
        case Curvature::Convex:
            return "convex";
        default:
            return "mixed";
    }
}

} // namespace persuasion
