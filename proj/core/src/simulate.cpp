#include "persuasion/simulate.hpp"

#include "persuasion/errors.hpp"
#include "persuasion/oneshot.hpp"
#include "persuasion/posterior.hpp"
#include "rng_util.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>
#include <utility>

namespace persuasion {

namespace {

// Replications are processed in fixed-size chunks, each with its own RNG
// substream, so the draw sequence is independent of the thread schedule.
constexpr std::uint64_t kChunkSize = std::uint64_t(1) << 16;

struct MaterializedStrategy {
    Experiment first;
    // One experiment per first-stage signal; empty for one-shot strategies.
    std::vector<Experiment> second;
    bool two_step = false;
};

MaterializedStrategy materialize(const SimConfig& config) {
    const std::size_t states = config.environment.n_states();
    if (const auto* exp = std::get_if<Experiment>(&config.strategy)) {
        if (exp->n_states() != states) {
            throw ValidationError("experiment state count does not match the environment");
        }
        return {*exp, {}, false};
    }

    const auto& strategy = std::get<TwoStepStrategy>(config.strategy);
    if (strategy.first.n_states() != states) {
        throw ValidationError("strategy state count does not match the environment");
    }
    if (strategy.second.size() != strategy.first.size()) {
        throw ValidationError("need one second-stage distribution per first-stage atom");
    }
    MaterializedStrategy m{splitting_experiment(strategy.first, config.environment.prior),
                           {},
                           true};
    m.second.reserve(strategy.first.size());
    for (std::size_t k = 0; k < strategy.first.size(); ++k) {
        const Belief& atom = strategy.first[k].belief;
        if (atom.is_degenerate()) {
            if (!strategy.second[k].is_plausible_at(atom)) {
                throw NotBayesPlausible("second-stage distribution does not match its atom");
            }
            // A degenerate interim belief admits only the null experiment.
            m.second.push_back(Experiment::null_experiment(states));
        } else {
            m.second.push_back(splitting_experiment(strategy.second[k], atom));
        }
    }
    return m;
}

struct ChunkStats {
    double sum = 0.0;
    double sum_squares = 0.0;
    std::vector<std::vector<std::uint64_t>> counts;
    std::vector<BeliefSample> paths;
};

void run_chunk(const SimConfig& config, const MaterializedStrategy& m, std::uint64_t chunk,
               std::uint64_t replications, std::uint64_t log_budget, ChunkStats& out) {
    std::mt19937_64 rng = detail::seeded_engine(config.seed, chunk);
    const PersuasionEnvironment& env = config.environment;
    out.counts.assign(env.n_states(), std::vector<std::uint64_t>(env.n_actions(), 0));
    out.paths.reserve(log_budget);

    for (std::uint64_t i = 0; i < replications; ++i) {
        const std::size_t theta =
            detail::sample_index(env.prior.probs(), detail::canonical_double(rng));
        const std::size_t s =
            detail::sample_index(m.first.conditionals()[theta], detail::canonical_double(rng));

        BeliefSample sample;
        sample.state = theta;
        std::size_t action = 0;
        if (!m.two_step) {
            const Belief final_belief = config.rule.update(m.first, env.prior, s);
            action = best_action(env, final_belief);
            if (i < log_budget) {
                sample.path.push_back(final_belief);
            }
        } else {
            const Belief interim = config.rule.update(m.first, env.prior, s);
            Belief final_belief = interim;
            if (!interim.is_degenerate()) {
                const std::size_t t = detail::sample_index(m.second[s].conditionals()[theta],
                                                           detail::canonical_double(rng));
                final_belief = config.rule.update(m.second[s], interim, t);
            }
            action = best_action(env, final_belief);
            if (i < log_budget) {
                sample.path.push_back(interim);
                sample.path.push_back(std::move(final_belief));
            }
        }

        const double payoff = env.sender_utility[action];
        out.sum += payoff;
        out.sum_squares += payoff * payoff;
        out.counts[theta][action] += 1;
        if (i < log_budget) {
            sample.action = action;
            out.paths.push_back(std::move(sample));
        }
    }
}

} // namespace

SimResult simulate(const SimConfig& config) {
    config.environment.validate();
    if (config.replications == 0) {
        throw ValidationError("simulation needs at least one replication");
    }
    const MaterializedStrategy m = materialize(config);

    const std::uint64_t chunks = (config.replications + kChunkSize - 1) / kChunkSize;
    std::vector<ChunkStats> stats(chunks);
    auto run_one = [&](std::uint64_t chunk) {
        const std::uint64_t begin = chunk * kChunkSize;
        const std::uint64_t reps = std::min(kChunkSize, config.replications - begin);
        const std::uint64_t cap = config.belief_log_cap;
        const std::uint64_t budget = begin >= cap ? 0 : std::min(reps, cap - begin);
        run_chunk(config, m, chunk, reps, budget, stats[chunk]);
    };

    unsigned threads =
        config.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : config.threads;
    threads = unsigned(std::min<std::uint64_t>(threads, chunks));
    if (threads <= 1) {
        for (std::uint64_t c = 0; c < chunks; ++c) {
            run_one(c);
        }
    } else {
        std::atomic<std::uint64_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (unsigned t = 0; t < threads; ++t) {
            pool.emplace_back([&]() {
                while (true) {
                    const std::uint64_t c = next.fetch_add(1);
                    if (c >= chunks) {
                        return;
                    }
                    run_one(c);
                }
            });
        }
        for (std::thread& worker : pool) {
            worker.join();
        }
    }

    SimResult result;
    result.action_counts.assign(config.environment.n_states(),
                                std::vector<std::uint64_t>(config.environment.n_actions(), 0));
    double sum = 0.0;
    double sum_squares = 0.0;
    // Chunk-ordered reduction keeps the totals bit-identical across runs.
    for (ChunkStats& chunk : stats) {
        sum += chunk.sum;
        sum_squares += chunk.sum_squares;
        for (std::size_t th = 0; th < result.action_counts.size(); ++th) {
            for (std::size_t a = 0; a < result.action_counts[th].size(); ++a) {
                result.action_counts[th][a] += chunk.counts[th][a];
            }
        }
        for (BeliefSample& sample : chunk.paths) {
            result.belief_paths.push_back(std::move(sample));
        }
    }

    const double n = double(config.replications);
    result.mean = sum / n;
    double variance = 0.0;
    if (config.replications > 1) {
        variance = std::max(0.0, (sum_squares - n * result.mean * result.mean) / (n - 1.0));
    }
    result.std_error = std::sqrt(variance / n);
    result.replications = config.replications;
    result.seed = config.seed;
    return result;
}

} // namespace persuasion
