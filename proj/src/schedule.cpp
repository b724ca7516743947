// Copyright 2026 The fastdirect Authors
// SPDX-License-Identifier: Apache-2.0

#include "fastdirect/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace fastdirect {

std::string to_string(SamplerKind kind) {
    switch (kind) {
        case SamplerKind::ddim_eta: return "ddim-eta";
        case SamplerKind::euler_sde: return "euler-sde";
    }
    return "unknown";
}

SamplerKind sampler_kind_from_string(const std::string& name) {
    if (name == "ddim-eta") return SamplerKind::ddim_eta;
    if (name == "euler-sde") return SamplerKind::euler_sde;
    throw ConfigError("unknown sampler preset '" + name + "' (expected ddim-eta or euler-sde)");
}

NoiseSchedule::NoiseSchedule(SamplerKind kind, std::vector<double> signal, std::vector<double> noise, double eta)
    : kind_(kind), signal_(std::move(signal)), noise_(std::move(noise)), eta_(eta) {
    if (signal_.size() < 2 || signal_.size() != noise_.size()) {
        throw ConfigError("schedule: need K >= 1 and matching signal/noise lengths");
    }
    if (!(eta_ >= 0.0 && eta_ <= 1.0)) throw ConfigError("schedule: eta must lie in [0, 1]");
    const std::size_t last = signal_.size() - 1;
    if (signal_[last] != 1.0 || noise_[last] != 0.0) {
        throw ConfigError("schedule: final level must be clean (signal 1, noise 0)");
    }
    for (std::size_t k = 0; k <= last; ++k) {
        if (!(noise_[k] >= 0.0) || !(signal_[k] >= 0.0)) throw ConfigError("schedule: negative coefficient");
        if (k > 0 && signal_[k] < signal_[k - 1]) throw ConfigError("schedule: signal must be nondecreasing");
        if (k > 0 && signal_[k] <= 0.0) throw ConfigError("schedule: signal must be positive after the prior");
        if (k < last && noise_[k] <= 0.0) throw ConfigError("schedule: only the final level may be noise-free");
    }
    if (kind_ == SamplerKind::euler_sde) {
        if (signal_[0] <= 0.0) throw ConfigError("schedule: euler-sde needs a positive prior signal");
        for (std::size_t k = 0; k <= last; ++k) {
            if (std::abs(signal_[k] * signal_[k] + noise_[k] * noise_[k] - 1.0) > 1e-9) {
                throw ConfigError("schedule: euler-sde requires a variance-preserving schedule");
            }
        }
    }
}

NoiseSchedule NoiseSchedule::ddim(int steps, double eta) {
    if (steps < 1) throw ConfigError("schedule: K must be >= 1");
    std::vector<double> signal(steps + 1), noise(steps + 1);
    for (int k = 0; k <= steps; ++k) {
        const double angle = 0.5 * std::numbers::pi * (1.0 - static_cast<double>(k) / steps);
        signal[k] = std::cos(angle);
        noise[k] = std::sin(angle);
    }
    signal[0] = 0.0;
    noise[0] = 1.0;
    signal[steps] = 1.0;
    noise[steps] = 0.0;
    return NoiseSchedule(SamplerKind::ddim_eta, std::move(signal), std::move(noise), eta);
}

NoiseSchedule NoiseSchedule::euler_sde(int steps) {
    if (steps < 1) throw ConfigError("schedule: K must be >= 1");
    constexpr double kPriorSignal = 1e-2;
    const double start = std::acos(kPriorSignal);
    std::vector<double> signal(steps + 1), noise(steps + 1);
    for (int k = 0; k <= steps; ++k) {
        const double angle = start * (1.0 - static_cast<double>(k) / steps);
        signal[k] = std::cos(angle);
        noise[k] = std::sin(angle);
    }
    signal[steps] = 1.0;
    noise[steps] = 0.0;
    return NoiseSchedule(SamplerKind::euler_sde, std::move(signal), std::move(noise), 1.0);
}

NoiseSchedule NoiseSchedule::preset(SamplerKind kind, int steps, double eta) {
    return kind == SamplerKind::ddim_eta ? ddim(steps, eta) : euler_sde(steps);
}

double NoiseSchedule::injection(int k) const {
    if (k < 1 || k > steps()) throw std::out_of_range("schedule: step index " + std::to_string(k) + " out of range");
    const double a_prev = signal_[k - 1], s_prev = noise_[k - 1];
    const double a_next = signal_[k], s_next = noise_[k];
    if (kind_ == SamplerKind::euler_sde) {
        const double ratio = a_prev / a_next;
        return std::sqrt(std::max(0.0, 1.0 - ratio * ratio));
    }
    // DDIM posterior standard deviation of x_next given (x_prev, z), scaled by eta.
    const double ratio = a_prev / a_next;
    const double transition = s_prev * s_prev - ratio * ratio * s_next * s_next;
    return eta_ * (s_next / s_prev) * std::sqrt(std::max(0.0, transition));
}

}  // namespace fastdirect
