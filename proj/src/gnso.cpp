// Copyright 2026 The fastdirect Authors
// SPDX-License-Identifier: Apache-2.0

#include "fastdirect/gnso.hpp"

#include <algorithm>
#include <cmath>

namespace fastdirect {

std::string to_string(DirectionKind kind) {
    switch (kind) {
        case DirectionKind::universal: return "universal";
        case DirectionKind::stepwise: return "stepwise";
        case DirectionKind::predicted: return "predicted";
        case DirectionKind::truncated: return "truncated";
    }
    return "unknown";
}

DirectionKind direction_kind_from_string(const std::string& name) {
    if (name == "universal") return DirectionKind::universal;
    if (name == "stepwise") return DirectionKind::stepwise;
    if (name == "predicted") return DirectionKind::predicted;
    if (name == "truncated") return DirectionKind::truncated;
    throw ConfigError("unknown direction rule '" + name + "'");
}

int DirectionRule::truncation_step(int steps) const {
    if (halvings < 0 || halvings > 3) throw ConfigError("direction: truncation halvings must be in 0..3");
    return std::max(1, steps >> halvings);
}

void StepSize::validate() const {
    if (!(value > 0.0) || !std::isfinite(value)) throw ConfigError("step size must be positive and finite");
}

void GnsoConfig::validate() const {
    step.validate();
    if (iterations < 1) throw ConfigError("gnso: iterations must be >= 1");
    if (direction.kind == DirectionKind::truncated) (void)direction.truncation_step(1);
}

Vector update_noise(const Vector& eps, const Vector& direction, double alpha, double frozen_norm) {
    require_dim(direction, eps.size(), "update_noise direction");
    if (!(frozen_norm > 0.0)) throw DegenerateUpdateError("update_noise: frozen norm must be positive");
    if (alpha == 0.0 || direction.isZero(0.0)) return eps;
    const Vector moved = eps + alpha * direction;
    const double norm = moved.norm();
    if (!(norm > 0.0)) throw DegenerateUpdateError("update_noise: updated noise has zero norm");
    return moved * (frozen_norm / norm);
}

Vector guidance_direction(const DirectionRule& rule, const Vector& target, const Trajectory& trajectory, int k) {
    switch (rule.kind) {
        case DirectionKind::universal: return target - trajectory.final_state();
        case DirectionKind::stepwise: return target - trajectory.states.at(k);
        case DirectionKind::predicted: return target - trajectory.predicted.at(k);
        case DirectionKind::truncated:
            return target - trajectory.states.at(rule.truncation_step(trajectory.steps()));
    }
    throw ConfigError("direction: unhandled rule");
}

void update_sequence(NoiseSequence& noise, const DirectionRule& rule, const Vector& target,
                     const Trajectory& trajectory, double alpha) {
    const bool shared = rule.kind == DirectionKind::universal || rule.kind == DirectionKind::truncated;
    const Vector common = shared ? guidance_direction(rule, target, trajectory, 0) : Vector();
    for (int k = 0; k <= noise.steps(); ++k) {
        const Vector direction = shared ? common : guidance_direction(rule, target, trajectory, k);
        noise.set(k, update_noise(noise[k], direction, alpha, noise.frozen_norm(k)));
    }
}

GnsoResult gnso_run(const Vector& target, const GnsoConfig& config, NoiseSequence& noise, const Sampler& sampler) {
    config.validate();
    require_dim(target, sampler.dim(), "gnso target");
    sampler.require_stochastic();

    GnsoResult result;
    result.target = target;
    result.distances.reserve(config.iterations);
    double alpha = config.step.normalized ? 0.0 : config.step.value;
    bool alpha_fixed = !config.step.normalized;

    for (int t = 1; t <= config.iterations; ++t) {
        result.trajectory = sampler.run(noise);
        const double distance = (target - result.trajectory.final_state()).norm();
        result.distances.push_back(distance);
        if (!alpha_fixed) {
            if (distance > 0.0) {
                alpha = config.step.value / distance;
                alpha_fixed = true;
            }
        }
        try {
            update_sequence(noise, config.direction, target, result.trajectory, alpha);
        } catch (const DegenerateUpdateError& e) {
            throw DegenerateUpdateError(std::string(e.what()) + " at iteration " + std::to_string(t), t);
        }
    }
    result.alpha = alpha;
    result.final_distance = result.distances.back();
    return result;
}

GnsoResult gnso_run_noisy_target(const Vector& target, double noise_std, const GnsoConfig& config,
                                 NoiseSequence& noise, const Sampler& sampler, Rng& rng) {
    if (!(noise_std >= 0.0)) throw ConfigError("gnso: target noise_std must be >= 0");
    if (noise_std == 0.0) return gnso_run(target, config, noise, sampler);
    const Vector guide = target + noise_std * standard_normal(target.size(), rng);
    auto result = gnso_run(guide, config, noise, sampler);
    result.reference = target;
    return result;
}

}  // namespace fastdirect
