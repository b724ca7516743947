// Copyright 2026 The fastdirect Authors
// SPDX-License-Identifier: Apache-2.0

#include "fastdirect/fast_direct.hpp"

#include <chrono>

#include "fastdirect/parallel.hpp"

namespace fastdirect {

namespace {

// Outer-iteration coordinate reserved for frozen-model batches; training batches use 1..N.
constexpr std::uint64_t kFrozenStream = 0;

}  // namespace

void FastDirectConfig::validate() const {
    if (batch_queries < 1) throw ConfigError("fast_direct: batch_queries (N) must be >= 1");
    if (batch_size < 1) throw ConfigError("fast_direct: batch_size (B) must be >= 1");
    step.validate();
    if (surrogate.rule == PseudoTargetRule::gp && surrogate.kernel.lengthscale > 0.0) surrogate.kernel.validate();
}

void FrozenConfig::validate() const {
    if (batch_size < 1) throw ConfigError("frozen: batch_size must be >= 1");
    if (inner_iterations < 1) throw ConfigError("frozen: inner_iterations must be >= 1");
    step.validate();
}

Vector guide_instance(const Sampler& sampler, const PseudoTargetModel& model, int iterations, const StepSize& step,
                      Rng rng) {
    NoiseSequence noise = NoiseSequence::sample(sampler.steps(), sampler.dim(), rng);
    const DirectionRule universal{};
    double alpha = step.normalized ? 0.0 : step.value;
    bool alpha_fixed = !step.normalized;

    Trajectory trajectory;
    for (int t = 1; t <= iterations; ++t) {
        trajectory = sampler.run(noise);
        if (t == iterations) break;  // the last update would never be sampled
        const auto target = model.target(trajectory.final_state());
        if (!target) continue;
        const double gap = (*target - trajectory.final_state()).norm();
        if (!alpha_fixed && gap > 0.0) {
            alpha = step.value / gap;
            alpha_fixed = true;
        }
        update_sequence(noise, universal, *target, trajectory, alpha);
    }
    return trajectory.final_state();
}

FastDirectResult fast_direct_run(const FastDirectConfig& config, const Sampler& sampler, const Objective& objective,
                                 BudgetMeter& meter) {
    config.validate();
    sampler.require_stochastic();

    FastDirectResult result;
    result.model = PseudoTargetModel::fit(config.surrogate, result.dataset);
    const auto batch = static_cast<std::size_t>(config.batch_size);

    for (int i = 1; i <= config.batch_queries; ++i) {
        const auto start = std::chrono::steady_clock::now();
        std::vector<Vector> samples(batch);
        const PseudoTargetModel& frozen = result.model;
        parallel_for(batch, config.threads, [&](std::size_t b) {
            samples[b] = guide_instance(sampler, frozen, i, config.step,
                                        make_rng({config.seed, static_cast<std::uint64_t>(i), b}));
        });

        std::vector<double> values;
        values.reserve(batch);
        for (std::size_t b = 0; b < batch; ++b) {
            try {
                values.push_back(objective.evaluate(samples[b], meter));
            } catch (const BudgetExceeded&) {
                result.complete = false;
                break;
            }
            result.dataset.append(samples[b], values.back(), i);
        }
        if (!values.empty()) {
            const double wall = config.record_wall_time
                                    ? std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count()
                                    : 0.0;
            result.trace.add_batch(i, values, wall);
        }
        result.batch = std::move(samples);
        if (!result.complete) {
            result.trace.mark_incomplete();
            break;
        }
        result.model = PseudoTargetModel::fit(config.surrogate, result.dataset);
    }
    return result;
}

std::vector<Vector> fast_direct_run_frozen(const PseudoTargetModel& model, const FrozenConfig& config,
                                           const Sampler& sampler) {
    config.validate();
    sampler.require_stochastic();
    std::vector<Vector> samples(static_cast<std::size_t>(config.batch_size));
    parallel_for(samples.size(), config.threads, [&](std::size_t b) {
        samples[b] = guide_instance(sampler, model, config.inner_iterations, config.step,
                                    make_rng({config.seed, kFrozenStream, b}));
    });
    return samples;
}

}  // namespace fastdirect
