// Copyright 2026 The fastdirect Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>

#include "fastdirect/gp.hpp"

namespace fastdirect {

enum class PseudoTargetRule { gp, historical_optimal };

std::string to_string(PseudoTargetRule rule);
PseudoTargetRule pseudo_target_rule_from_string(const std::string& name);

struct SurrogateSettings {
    PseudoTargetRule rule = PseudoTargetRule::gp;
    /// Lengthscale <= 0 means sqrt(d).
    KernelSpec kernel{KernelFamily::gaussian, 0.0};
    std::optional<double> regularizer;
};

/// Pseudo-target model refit from the dataset once per outer iteration.
class PseudoTargetModel {
public:
    PseudoTargetModel() = default;

    static PseudoTargetModel fit(const SurrogateSettings& settings, const QueryDataset& data);

    PseudoTargetRule rule() const { return rule_; }
    bool empty() const { return trained_on_ == 0; }
    std::size_t trained_on() const { return trained_on_; }
    const GpSurrogate& gp() const { return gp_; }

    /// Pseudo target for an instance whose current sample is x_K; nullopt means no guidance.
    std::optional<Vector> target(const Vector& x_K) const;

private:
    PseudoTargetRule rule_ = PseudoTargetRule::gp;
    GpSurrogate gp_;
    std::optional<Vector> best_;
    std::size_t trained_on_ = 0;
};

}  // namespace fastdirect
