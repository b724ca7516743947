// Copyright 2026 The fastdirect Authors
// SPDX-License-Identifier: Apache-2.0

#include "fastdirect/pseudo_target.hpp"

namespace fastdirect {

std::string to_string(PseudoTargetRule rule) {
    return rule == PseudoTargetRule::gp ? "gp" : "historical_optimal";
}

PseudoTargetRule pseudo_target_rule_from_string(const std::string& name) {
    if (name == "gp") return PseudoTargetRule::gp;
    if (name == "historical_optimal") return PseudoTargetRule::historical_optimal;
    throw ConfigError("unknown pseudo-target rule '" + name + "' (expected gp or historical_optimal)");
}

PseudoTargetModel PseudoTargetModel::fit(const SurrogateSettings& settings, const QueryDataset& data) {
    PseudoTargetModel model;
    model.rule_ = settings.rule;
    model.trained_on_ = data.size();
    if (settings.rule == PseudoTargetRule::historical_optimal) {
        model.best_ = pseudo_target_historical(data);
        return model;
    }
    KernelSpec kernel = settings.kernel;
    if (kernel.lengthscale <= 0.0) {
        kernel = KernelSpec::with_default_lengthscale(kernel.family, data.empty() ? 1 : data.dim());
    }
    model.gp_ = GpSurrogate::fit(data, kernel, settings.regularizer);
    return model;
}

std::optional<Vector> PseudoTargetModel::target(const Vector& x_K) const {
    if (empty()) return std::nullopt;
    if (rule_ == PseudoTargetRule::historical_optimal) return best_;
    return gp_.pseudo_target(x_K);
}

}  // namespace fastdirect
