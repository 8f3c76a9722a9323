#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "persuasion/belief.hpp"
#include "persuasion/envelope.hpp"
#include "persuasion/errors.hpp"

#include <cmath>
#include <vector>

using namespace persuasion;

namespace {

PiecewiseUtility indicator(double threshold) {
    return PiecewiseUtility{
        [threshold](double q) { return q >= threshold ? 1.0 : 0.0; },
        {threshold},
    };
}

double certified_value(const EnvelopeResult& result, const PiecewiseUtility& utility) {
    double total = 0.0;
    for (const auto& atom : result.support.atoms()) {
        total += atom.weight * utility.eval(atom.belief.scalar());
    }
    return total;
}

} // namespace

TEST_CASE("threshold concavification closed form") {
    EnvelopeResult at_third = cav_threshold(0.5, 0.3);
    CHECK(at_third.value == doctest::Approx(0.6).epsilon(1e-14));
    REQUIRE(at_third.support.size() == 2);
    CHECK(at_third.support[0].belief.scalar() == 0.0);
    CHECK(at_third.support[0].weight == doctest::Approx(0.4).epsilon(1e-14));
    CHECK(at_third.support[1].belief.scalar() == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(at_third.support[1].weight == doctest::Approx(0.6).epsilon(1e-14));

    CHECK(cav_threshold(0.7, 0.3).value == doctest::Approx(3.0 / 7.0).epsilon(1e-14));
    CHECK(cav_threshold(0.42, 0.42).value == 1.0);

    EnvelopeResult above = cav_threshold(0.5, 0.9);
    CHECK(above.value == 1.0);
    REQUIRE(above.support.size() == 1);
    CHECK(above.support[0].belief.scalar() == doctest::Approx(0.9).epsilon(1e-15));

    CHECK_THROWS_AS(cav_threshold(0.0, 0.3), InvalidThreshold);
    CHECK_THROWS_AS(cav_threshold(1.2, 0.3), InvalidThreshold);
    CHECK_THROWS_AS(cav_threshold(0.5, 1.5), ValidationError);
}

TEST_CASE("grid envelope matches the threshold closed form") {
    PiecewiseUtility u = indicator(0.5);
    EnvelopeResult grid = cav_grid(u, 0.3, 1001);
    CHECK(grid.value == doctest::Approx(0.6).epsilon(1e-9));
    CHECK(grid.support.is_plausible_at(Belief::binary(0.3), kCertificateTol));
    CHECK(certified_value(grid, u) == doctest::Approx(grid.value).epsilon(1e-9));

    PiecewiseUtility tight = indicator(0.7);
    for (double q : {0.1, 0.3, 0.65}) {
        CHECK(cav_grid(tight, q).value ==
              doctest::Approx(cav_threshold(0.7, q).value).epsilon(1e-9));
    }
    CHECK(cav_grid(tight, 0.7).value == 1.0);
    CHECK(cav_grid(tight, 0.95).value == 1.0);
}

TEST_CASE("concave utilities are their own envelope") {
    PiecewiseUtility parabola{[](double q) { return q * (1.0 - q); }, {}};
    for (double q : {0.2, 0.5, 0.77}) {
        EnvelopeResult result = cav_grid(parabola, q);
        CHECK(result.value == doctest::Approx(q * (1.0 - q)).epsilon(1e-6));
        CHECK(result.value >= q * (1.0 - q) - 1e-12);
    }
}

TEST_CASE("sampled dominance and certificates") {
    PiecewiseUtility jagged{
        [](double q) {
            if (q < 0.25) {
                return 0.2;
            }
            if (q < 0.6) {
                return std::sin(8.0 * q);
            }
            return 0.4 * q;
        },
        {0.25, 0.6},
    };
    for (double q = 0.0; q <= 1.0; q += 0.1) {
        EnvelopeResult result = cav_grid(jagged, q);
        CHECK(result.value >= jagged.eval(q) - 1e-12);
        CHECK(result.support.is_plausible_at(Belief::binary(q), kCertificateTol));
        CHECK(certified_value(result, jagged) == doctest::Approx(result.value).epsilon(1e-9));
    }
}

TEST_CASE("refinement never loses value") {
    PiecewiseUtility u = indicator(0.37);
    for (double q : {0.1, 0.3, 0.36, 0.5}) {
        const double coarse = cav_grid(u, q, 2001).value;
        const double fine = cav_grid(u, q, 4001).value;
        CHECK(fine >= coarse - 1e-9);
    }
}

TEST_CASE("envelope input validation") {
    PiecewiseUtility u = indicator(0.5);
    CHECK_THROWS_AS(cav_grid(u, 0.3, 1), ValidationError);
    CHECK_THROWS_AS(cav_grid(u, 1.7), ValidationError);
    CHECK_THROWS_AS(cav_grid(u, Belief({0.2, 0.3, 0.5})), UnsupportedDimension);

    PiecewiseUtility bad{[](double) { return 1.0; }, {1.4}};
    CHECK_THROWS_AS(cav_grid(bad, 0.3), ValidationError);

    PiecewiseUtility unbounded{
        [](double q) { return q > 0.5 ? std::numeric_limits<double>::infinity() : 0.0; }, {}};
    CHECK_THROWS_AS(cav_grid(unbounded, 0.3), NumericalFailure);
}
