// Copyright 2026 The fastdirect Authors
// SPDX-License-Identifier: Apache-2.0

#include "fastdirect/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace fastdirect {

Sampler::Sampler(MixtureModel model, NoiseSchedule schedule) : model_(std::move(model)), schedule_(std::move(schedule)) {}

void Sampler::require_stochastic() const {
    if (schedule_.kind() == SamplerKind::ddim_eta && schedule_.eta() == 0.0) {
        throw ConfigError("sampler: eta = 0 makes the chain ignore eps_1..eps_K; guidance needs eta > 0");
    }
}

StepResult Sampler::step(const Vector& x_prev, const Vector& eps, int k) const {
    if (k < 1 || k > steps()) throw std::out_of_range("sampler: step index " + std::to_string(k) + " out of range");
    require_dim(x_prev, dim(), "sampler state");
    require_dim(eps, dim(), "sampler noise");

    const NoiseLevel prev = schedule_.level(k - 1);
    const NoiseLevel next = schedule_.level(k);
    const double c = schedule_.injection(k);

    StepResult out;
    out.predicted = model_.posterior_mean(x_prev, prev);
    if (schedule_.kind() == SamplerKind::ddim_eta) {
        const Vector eps_hat = (x_prev - prev.signal * out.predicted) / prev.noise;
        const double carried = std::sqrt(std::max(0.0, next.noise * next.noise - c * c));
        out.state = next.signal * out.predicted + carried * eps_hat;
    } else {
        const double ratio = next.signal / prev.signal;
        const double beta = c * c;
        out.state = ratio * (x_prev + beta * model_.score(x_prev, prev));
    }
    if (c != 0.0) out.state += c * eps;
    return out;
}

void Sampler::check_noise(const NoiseSequence& noise) const {
    if (noise.steps() != steps()) {
        throw DimensionError("sampler: noise sequence has " + std::to_string(noise.steps()) + " steps, schedule has " +
                             std::to_string(steps()));
    }
    require_dim(noise[0], dim(), "sampler noise");
}

Trajectory Sampler::run(const NoiseSequence& noise) const {
    check_noise(noise);
    Trajectory t;
    t.states.reserve(steps() + 1);
    t.predicted.reserve(steps() + 1);
    t.states.push_back(noise[0]);
    t.predicted.emplace_back();
    for (int k = 1; k <= steps(); ++k) {
        auto r = step(t.states.back(), noise[k], k);
        t.states.push_back(std::move(r.state));
        t.predicted.push_back(std::move(r.predicted));
    }
    t.predicted[0] = t.predicted[1];
    return t;
}

Vector Sampler::generate(const NoiseSequence& noise) const {
    check_noise(noise);
    Vector x = noise[0];
    for (int k = 1; k <= steps(); ++k) x = step(x, noise[k], k).state;
    return x;
}

}  // namespace fastdirect
