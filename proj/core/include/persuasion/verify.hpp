#pragma once

#include "persuasion/environment.hpp"
#include "persuasion/oneshot.hpp"
#include "persuasion/rules.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace persuasion {

// Verdict threshold for the divisibility grid check.
inline constexpr double kDivisibilityTol = 1e-8;

// Gap size the conjecture search treats as a finding.
inline constexpr double kConjectureGapTol = 1e-4;

struct DivisibilityReport {
    double max_deviation = 0.0;
    // Interior pair realizing the maximum, as probabilities of state 1.
    double worst_first = 0.0;
    double worst_second = 0.0;
    int grid_resolution = 0;
    bool divisible = false;
};

// Compares the second-stage transform against the one-shot distortion over an
// interior grid of binary (first, second) posterior pairs. A rule is divisible
// when composing two updates is the same as one update from the prior.
DivisibilityReport check_divisibility(const UpdatingRule& rule, double p,
                                      int grid_resolution = 200);

// Concavification oracle over binary beliefs: enumerates every grid mixture of
// two points straddling the query. Two atoms suffice on a one-dimensional
// belief space, so the enumeration is exhaustive at grid precision.
double brute_force_cav(const std::function<double(double)>& utility, double query,
                       int resolution = 1001);

struct ConjectureGapReport {
    // Two-step minus one-shot value at the best witness found.
    double best_gap = 0.0;
    double witness_prior = 0.0;
    double witness_switch_point = 0.0;
    double oneshot_value = 0.0;
    double twostep_value = 0.0;
    std::uint64_t trials = 0;
    bool gap_found = false;
    bool rule_divisible = false;
    double divisibility_deviation = 0.0;
};

// Best-effort search for a value gap between two-step and one-shot persuasion
// over random priors and receiver switch points. The first trial always probes
// the base environment's prior with the one-half switch point. Finding no gap
// is not a refutation.
ConjectureGapReport search_conjecture_gap(const UpdatingRule& rule,
                                          const PersuasionEnvironment& base_env,
                                          std::uint64_t trials, std::uint64_t seed,
                                          const SolveOptions& options = {});

struct SuiteCheck {
    std::string name;
    std::uint64_t instances = 0;
    std::uint64_t violations = 0;
    double max_deviation = 0.0;
    double tolerance = 0.0;
    bool passed = false;
};

struct SuiteReport {
    std::string suite;
    std::uint64_t seed = 0;
    std::vector<SuiteCheck> checks;
    bool passed = false;
};

// Randomized identity check: the receiver's literal second update equals the
// transformed distortion of the Bayesian posterior, across all rule families
// and state counts, within 1e-10.
SuiteReport lemma1_suite(std::uint64_t seed, std::size_t instances = 1200);

// Grid divisibility verdicts for the divisible families, non-divisibility
// detection for the amplifying ones, and value indifference of the two-step
// solver under divisible rules.
SuiteReport divisibility_suite();

// Closed-form thresholds and values against the generic pipeline.
SuiteReport grether_suite();

// Randomized utilities checked for envelope dominance, concavity, grid
// refinement monotonicity, and agreement with the brute-force oracle.
SuiteReport envelope_suite(std::uint64_t seed, std::size_t utilities = 50);

// Simulated means against analytic values at three standard errors, plus
// exactness and determinism spot checks.
SuiteReport simulation_suite(std::uint64_t seed, std::uint64_t replications = 1000000);

const std::vector<std::string>& suite_names();

// Dispatches by suite name; throws ValidationError for an unknown name.
SuiteReport run_suite(const std::string& name, std::uint64_t seed);

} // namespace persuasion
