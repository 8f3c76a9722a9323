#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "persuasion/environment.hpp"
#include "persuasion/errors.hpp"
#include "persuasion/grether.hpp"
#include "persuasion/oneshot.hpp"
#include "persuasion/rules.hpp"
#include "persuasion/twostep.hpp"

#include <cmath>
#include <vector>

using namespace persuasion;

namespace {

const std::vector<double> kExponentGrid{0.25, 0.5, 1.0, 1.5, 2.0, 3.0};
const std::vector<double> kPriorGrid{0.05, 0.1, 0.3, 0.45};

} // namespace

TEST_CASE("interim threshold spot values") {
    CHECK(interim_threshold(1.0, 1.0, 0.3, 0.8) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(interim_threshold(1.0, 1.0, 0.05, 0.2) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(interim_threshold(2.0, 1.0, 0.3, 0.3) ==
          doctest::Approx(343.0 / 370.0).epsilon(1e-12));
    CHECK_THROWS_AS(interim_threshold(2.0, 1.0, 0.0, 0.3), DomainError);
    CHECK_THROWS_AS(interim_threshold(2.0, 1.0, 0.3, 1.0), DomainError);
    CHECK_THROWS_AS(interim_threshold(0.0, 1.0, 0.3, 0.3), DomainError);
    CHECK_THROWS_AS(interim_threshold(1.0, -2.0, 0.3, 0.3), DomainError);
}

TEST_CASE("outer threshold spot values and fixed-point property") {
    CHECK(outer_threshold(1.7, 1.7, 0.12) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(outer_threshold(2.0, 1.0, 0.3) == doctest::Approx(0.7).epsilon(1e-12));
    const double sqrt3 = std::sqrt(3.0);
    const double sqrt7 = std::sqrt(7.0);
    CHECK(outer_threshold(0.5, 1.0, 0.3) ==
          doctest::Approx(sqrt3 / (sqrt3 + sqrt7)).epsilon(1e-12));

    for (auto [alpha, beta, p] :
         std::vector<std::array<double, 3>>{{2.0, 1.0, 0.3}, {0.5, 1.0, 0.3}, {1.5, 2.7, 0.1}}) {
        const double qstar = outer_threshold(alpha, beta, p);
        CHECK(interim_threshold(alpha, beta, p, qstar) == doctest::Approx(qstar).epsilon(1e-12));

        // The switch map crosses the diagonal exactly once.
        int crossings = 0;
        double root = 0.0;
        const int cells = 999;
        auto gap = [&](double q) { return interim_threshold(alpha, beta, p, q) - q; };
        double prev = gap(1e-6);
        for (int i = 1; i <= cells; ++i) {
            const double q = 1e-6 + (1.0 - 2e-6) * double(i) / double(cells);
            const double cur = gap(q);
            if ((prev > 0.0) != (cur > 0.0)) {
                ++crossings;
                double lo = 1e-6 + (1.0 - 2e-6) * double(i - 1) / double(cells);
                double hi = q;
                for (int iter = 0; iter < 200; ++iter) {
                    const double mid = 0.5 * (lo + hi);
                    if (mid <= lo || mid >= hi) {
                        break;
                    }
                    if ((gap(mid) > 0.0) == (prev > 0.0)) {
                        lo = mid;
                    } else {
                        hi = mid;
                    }
                }
                root = hi;
            }
            prev = cur;
        }
        CHECK(crossings == 1);
        CHECK(root == doctest::Approx(qstar).epsilon(1e-10));
    }
}

TEST_CASE("closed-form value spot checks") {
    const GretherValues bayesian = closed_form_values(1.0, 1.0, 0.3);
    CHECK(bayesian.interim_value_at_prior == doctest::Approx(0.6).epsilon(1e-12));
    CHECK(bayesian.oneshot_value == doctest::Approx(0.6).epsilon(1e-12));

    const double geometric_expected = 0.3 * (1.0 + std::pow(3.0 / 7.0, 1.0 / 2.7 - 1.0));
    const GretherValues geometric = closed_form_values(1.0, 2.7, 0.3);
    CHECK(geometric.interim_value_at_prior == doctest::Approx(geometric_expected).epsilon(1e-12));
    CHECK(geometric.oneshot_value == doctest::Approx(geometric_expected).epsilon(1e-12));

    const GretherValues amplifying = closed_form_values(2.0, 1.0, 0.3);
    CHECK(amplifying.interim_value_at_prior == doctest::Approx(111.0 / 343.0).epsilon(1e-12));
    CHECK(amplifying.oneshot_value == doctest::Approx(3.0 / 7.0).epsilon(1e-12));

    const GretherValues dampening = closed_form_values(0.5, 1.0, 0.3);
    CHECK(dampening.interim_value_at_prior ==
          doctest::Approx(0.3 * (1.0 + std::pow(3.0 / 7.0, -0.75))).epsilon(1e-12));
    CHECK(dampening.oneshot_value ==
          doctest::Approx(0.3 * (1.0 + std::pow(3.0 / 7.0, -0.5))).epsilon(1e-12));

    const GretherValues trivial = closed_form_values(2.0, 1.0, 0.5);
    CHECK(trivial.interim_value_at_prior == 1.0);
    CHECK(trivial.oneshot_value == 1.0);
    CHECK(closed_form_values(2.0, 1.0, 0.7).oneshot_value == 1.0);

    CHECK_THROWS_AS(closed_form_values(2.0, 1.0, 0.0), DomainError);
    CHECK_THROWS_AS(closed_form_values(2.0, 1.0, 1.0), DomainError);
}

TEST_CASE("outer threshold matches the one-shot switch point") {
    for (double alpha : {0.5, 1.0, 2.0}) {
        for (double beta : {0.7, 1.3}) {
            for (double p : {0.1, 0.3}) {
                const PersuasionEnvironment env = judge_prosecutor(p);
                const OneShotSolution solution =
                    solve_oneshot(env, UpdatingRule::grether(alpha, beta));
                REQUIRE(solution.threshold.has_value());
                CHECK(*solution.threshold ==
                      doctest::Approx(outer_threshold(alpha, beta, p)).epsilon(1e-10));
            }
        }
    }
}

TEST_CASE("closed forms agree with the generic pipeline") {
    for (double alpha : kExponentGrid) {
        for (double beta : kExponentGrid) {
            for (double p : kPriorGrid) {
                CAPTURE(alpha);
                CAPTURE(beta);
                CAPTURE(p);
                const GretherValues closed = closed_form_values(alpha, beta, p);
                const PersuasionEnvironment env = judge_prosecutor(p);
                const UpdatingRule rule = UpdatingRule::grether(alpha, beta);
                const double interim = interim_value(env, rule, Belief::binary(p));
                const double oneshot = solve_oneshot(env, rule).value;
                CHECK(interim == doctest::Approx(closed.interim_value_at_prior).epsilon(1e-6));
                CHECK(oneshot == doctest::Approx(closed.oneshot_value).epsilon(1e-6));
            }
        }
    }
}

TEST_CASE("gap sign at the prior depends only on the base-rate exponent") {
    for (double alpha : kExponentGrid) {
        for (double p : kPriorGrid) {
            for (double beta : kExponentGrid) {
                CAPTURE(alpha);
                CAPTURE(beta);
                CAPTURE(p);
                const GretherValues closed = closed_form_values(alpha, beta, p);
                const double gap = closed.interim_value_at_prior - closed.oneshot_value;
                if (alpha < 1.0) {
                    CHECK(gap > 0.0);
                } else if (alpha > 1.0) {
                    CHECK(gap < 0.0);
                } else {
                    CHECK(gap == 0.0);
                }
            }
        }
    }
}

TEST_CASE("comparison report for a divisible rule") {
    const GretherReport report = comparison_report(1.0, 2.7, 0.3);
    CHECK(report.sign_at_prior == 0);
    CHECK(report.computed_comparison == Comparison::Indifferent);
    CHECK(report.concordant);
    CHECK(report.curvature == Curvature::Linear);
}

TEST_CASE("comparison report for a dampening rule") {
    const GretherReport report = comparison_report(0.5, 1.0, 0.3);
    CHECK(report.sign_at_prior == 1);
    CHECK(report.sign_comparison == Comparison::Better);
    CHECK(report.computed_comparison == Comparison::Better);
    CHECK(report.concordant);
    CHECK(report.curvature == Curvature::Concave);
    CHECK(report.max_second_difference < -0.1);
    CHECK(report.twostep_value ==
          doctest::Approx(report.interim_value_at_prior).epsilon(1e-6));
    CHECK(report.twostep_value - report.oneshot_value > 1e-4);
}

TEST_CASE("comparison report for an amplifying rule") {
    const GretherReport report = comparison_report(2.0, 1.0, 0.3);
    CHECK(report.sign_at_prior == -1);
    CHECK(report.sign_comparison == Comparison::Worse);
    // The interim value function is measurably convex below the switch
    // point, so its envelope meets the one-shot chord instead of dropping
    // below it.
    CHECK(report.curvature == Curvature::Convex);
    CHECK(report.min_second_difference > 0.1);
    CHECK(report.computed_comparison == Comparison::Indifferent);
    CHECK_FALSE(report.concordant);
    CHECK(report.twostep_value == doctest::Approx(report.oneshot_value).epsilon(1e-6));

    CHECK_THROWS_AS(comparison_report(2.0, 1.0, 0.6), DomainError);
}
