// Copyright 2026 The fastdirect Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fastdirect/sampler.hpp"

namespace fastdirect {

/// The noise update would land on the origin, so it cannot be re-projected.
class DegenerateUpdateError : public std::runtime_error {
public:
    DegenerateUpdateError(const std::string& what, int iteration = -1)
        : std::runtime_error(what), iteration_(iteration) {}
    int iteration() const { return iteration_; }

private:
    int iteration_;
};

enum class DirectionKind {
    universal,  // x* - x_K for every noise
    stepwise,   // x* - x_k for eps_k
    predicted,  // x* - xhat_k for eps_k
    truncated,  // x* - x_{K'} for every noise
};

std::string to_string(DirectionKind kind);
DirectionKind direction_kind_from_string(const std::string& name);

struct DirectionRule {
    DirectionKind kind = DirectionKind::universal;
    /// For truncated: K' = max(1, floor(K / 2^halvings)), halvings in {0, 1, 2, 3}.
    int halvings = 0;

    int truncation_step(int steps) const;
};

/// Step size alpha. When normalized, alpha = value / ||x* - x_K|| at the first iteration with a
/// nonzero gap, then held fixed for the rest of the run.
struct StepSize {
    double value = 0.5;
    bool normalized = true;

    void validate() const;
};

struct GnsoConfig {
    StepSize step;
    int iterations = 50;
    DirectionRule direction;

    void validate() const;
};

/// (eps + alpha * direction) re-projected to frozen_norm. A zero step returns eps unchanged.
Vector update_noise(const Vector& eps, const Vector& direction, double alpha, double frozen_norm);

/// Direction applied to eps_k given the current trajectory.
Vector guidance_direction(const DirectionRule& rule, const Vector& target, const Trajectory& trajectory, int k);

/// Applies one update of every noise in the sequence.
void update_sequence(NoiseSequence& noise, const DirectionRule& rule, const Vector& target,
                     const Trajectory& trajectory, double alpha);

struct GnsoResult {
    Trajectory trajectory;            // chain generated at iteration T
    std::vector<double> distances;    // ||x* - x_K|| of the chain at t = 1..T
    double final_distance = 0.0;      // distances.back()
    double alpha = 0.0;               // effective step size
    Vector target;                    // target actually guided toward
    std::optional<Vector> reference;  // clean target when the guide was perturbed
};

/// Guided noise sequence optimization toward a fixed target; mutates `noise`.
GnsoResult gnso_run(const Vector& target, const GnsoConfig& config, NoiseSequence& noise, const Sampler& sampler);

/// As gnso_run, with the target perturbed once by noise_std * N(0, I) drawn from rng.
GnsoResult gnso_run_noisy_target(const Vector& target, double noise_std, const GnsoConfig& config,
                                 NoiseSequence& noise, const Sampler& sampler, Rng& rng);

}  // namespace fastdirect
