#pragma once

#include "persuasion/twostep.hpp"

namespace persuasion {

// Absolute tolerance on second-difference estimates when classifying the
// curvature of the interim value function.
inline constexpr double kCurvatureTol = 1e-4;

// Second-stage switch point of the Grether rule in the judge-prosecutor
// environment: the second-stage Bayesian posterior above which the receiver
// convicts, as a function of the sender's interim belief.
double interim_threshold(double alpha, double beta, double prior, double first_posterior);

// First-stage posterior past which the interim value saturates at one. The
// unique fixed point of q -> interim_threshold(alpha, beta, prior, q); it
// coincides with the one-shot switch point.
double outer_threshold(double alpha, double beta, double prior);

// Closed-form sender values for priors below one half; both equal 1 above.
struct GretherValues {
    // Second-stage value when the first stage reveals nothing.
    double interim_value_at_prior = 0.0;
    // Optimal one-shot value.
    double oneshot_value = 0.0;
};

GretherValues closed_form_values(double alpha, double beta, double prior);

enum class Curvature { Concave, Linear, Convex, Mixed };

const char* to_string(Curvature curvature);

// Side-by-side comparison of one-shot and two-step persuasion for a Grether
// receiver, mixing closed forms with the generic solver.
struct GretherReport {
    double alpha = 0.0;
    double beta = 0.0;
    double prior = 0.0;
    double switch_point = 0.0;
    // Closed forms.
    double interim_value_at_prior = 0.0;
    double oneshot_value = 0.0;
    // Generic solver output.
    double twostep_value = 0.0;
    // Sign of interim_value_at_prior - oneshot_value: +1, 0 within 1e-9, -1.
    int sign_at_prior = 0;
    // Comparison suggested by that sign. The suggestion binds only when the
    // interim value function is concave below the switch point, so it can
    // disagree with the solver's classification.
    Comparison sign_comparison = Comparison::Indifferent;
    Comparison computed_comparison = Comparison::Indifferent;
    bool concordant = false;
    // Curvature of the interim value function on (0, switch_point), measured
    // by centered second differences at 25 interior points.
    Curvature curvature = Curvature::Linear;
    double min_second_difference = 0.0;
    double max_second_difference = 0.0;
};

GretherReport comparison_report(double alpha, double beta, double prior,
                                const SolveOptions& options = {});

} // namespace persuasion
