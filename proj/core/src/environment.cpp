#include "persuasion/environment.hpp"

#include "persuasion/errors.hpp"

#include <cmath>

namespace persuasion {

void PersuasionEnvironment::validate() const {
    if (!prior.full_support()) {
        throw ValidationError("environment prior must have full support");
    }
    if (receiver_utility.empty()) {
        throw ValidationError("environment needs at least one action");
    }
    for (const auto& row : receiver_utility) {
        if (row.size() != n_states()) {
            throw ValidationError("receiver utility row does not match state count");
        }
        for (double v : row) {
            if (!std::isfinite(v)) {
                throw ValidationError("receiver utility entry is not finite");
            }
        }
    }
    if (sender_utility.size() != n_actions()) {
        throw ValidationError("sender utility does not match action count");
    }
    for (double v : sender_utility) {
        if (!std::isfinite(v)) {
            throw ValidationError("sender utility entry is not finite");
        }
    }
}

PersuasionEnvironment judge_prosecutor(double guilt_prior) {
    if (!(guilt_prior > 0.0 && guilt_prior < 1.0)) {
        throw ValidationError("guilt prior must lie strictly inside (0,1)");
    }
    PersuasionEnvironment env{
        Belief({1.0 - guilt_prior, guilt_prior}),
        {{1.0, 0.0}, {0.0, 1.0}},
        {0.0, 1.0},
    };
    env.validate();
    return env;
}

PersuasionEnvironment threshold_environment(double guilt_prior, double switch_point) {
    if (!(guilt_prior > 0.0 && guilt_prior < 1.0)) {
        throw ValidationError("guilt prior must lie strictly inside (0,1)");
    }
    if (!(switch_point > 0.0 && switch_point < 1.0)) {
        throw ValidationError("switch point must lie strictly inside (0,1)");
    }
    PersuasionEnvironment env{
        Belief({1.0 - guilt_prior, guilt_prior}),
        {{switch_point / (1.0 - switch_point), 0.0}, {0.0, 1.0}},
        {0.0, 1.0},
    };
    env.validate();
    return env;
}

} // namespace persuasion
