// Copyright 2026 The fastdirect Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include "fastdirect/mixture.hpp"

namespace fastdirect {

enum class SamplerKind {
    ddim_eta,   // DDIM update with stochasticity eta
    euler_sde,  // Euler-Maruyama discretization of the reverse variance-preserving SDE
};

std::string to_string(SamplerKind kind);
SamplerKind sampler_kind_from_string(const std::string& name);

/**
 * Reverse-chain noise levels for k = 0..K. State k is x_k = signal[k] * z + noise[k] * n;
 * k = 0 is the noise prior and k = K is a clean sample (signal 1, noise 0).
 */
class NoiseSchedule {
public:
    NoiseSchedule(SamplerKind kind, std::vector<double> signal, std::vector<double> noise, double eta);

    /// Cosine variance-preserving schedule starting from pure noise (signal[0] = 0).
    static NoiseSchedule ddim(int steps, double eta = 1.0);

    /// Cosine variance-preserving schedule; signal[0] is kept strictly positive
    /// (prior variance ratio 1e-4) since the Euler update divides by it.
    static NoiseSchedule euler_sde(int steps);

    static NoiseSchedule preset(SamplerKind kind, int steps, double eta = 1.0);

    SamplerKind kind() const { return kind_; }
    int steps() const { return static_cast<int>(signal_.size()) - 1; }
    double eta() const { return eta_; }
    NoiseLevel level(int k) const { return {signal_.at(k), noise_.at(k)}; }
    const std::vector<double>& signal() const { return signal_; }
    const std::vector<double>& noise() const { return noise_; }

    /// Scale applied to the injected noise eps_k in step k (1 <= k <= K).
    double injection(int k) const;

private:
    SamplerKind kind_;
    std::vector<double> signal_;
    std::vector<double> noise_;
    double eta_;
};

}  // namespace fastdirect
