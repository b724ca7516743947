// Copyright 2026 The fastdirect Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "fastdirect/mixture.hpp"
#include "fastdirect/noise.hpp"
#include "fastdirect/schedule.hpp"

namespace fastdirect {

struct StepResult {
    Vector state;      // x_k
    Vector predicted;  // predicted clean point at step k, computed from x_{k-1}
};

/// States x_0..x_K; predicted[k] for k >= 1 with predicted[0] := predicted[1].
struct Trajectory {
    std::vector<Vector> states;
    std::vector<Vector> predicted;

    const Vector& final_state() const { return states.back(); }
    int steps() const { return static_cast<int>(states.size()) - 1; }
};

/**
 * The pre-trained stochastic sampler: a reverse diffusion chain whose denoiser
 * is the exact mixture posterior mean. Given the noise sequence the chain is
 * deterministic. Stateless and thread-safe.
 */
class Sampler {
public:
    Sampler(MixtureModel model, NoiseSchedule schedule);

    const MixtureModel& model() const { return model_; }
    const NoiseSchedule& schedule() const { return schedule_; }
    int steps() const { return schedule_.steps(); }
    Eigen::Index dim() const { return model_.dim(); }

    StepResult step(const Vector& x_prev, const Vector& eps, int k) const;

    Trajectory run(const NoiseSequence& noise) const;

    /// x_K only.
    Vector generate(const NoiseSequence& noise) const;

    /// Guided runs need every eps_k to reach the chain; rejects eta = 0.
    void require_stochastic() const;

private:
    void check_noise(const NoiseSequence& noise) const;

    MixtureModel model_;
    NoiseSchedule schedule_;
};

}  // namespace fastdirect
