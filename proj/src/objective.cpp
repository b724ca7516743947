// Copyright 2026 The fastdirect Authors
// SPDX-License-Identifier: Apache-2.0

#include "fastdirect/objective.hpp"

#include <algorithm>
#include <cmath>

#include "fastdirect/rng.hpp"

namespace fastdirect {

std::size_t BudgetMeter::charge() {
    std::size_t current = spent_.load();
    do {
        if (current >= limit_) {
            throw BudgetExceeded("budget exhausted: " + std::to_string(limit_) + " evaluations already spent");
        }
    } while (!spent_.compare_exchange_weak(current, current + 1));
    return current;
}

std::string to_string(ObjectiveKind kind) {
    switch (kind) {
        case ObjectiveKind::target_distance: return "target_distance";
        case ObjectiveKind::quantized_rating: return "quantized_rating";
        case ObjectiveKind::mode_density: return "mode_density";
        case ObjectiveKind::coordinate_sum: return "coordinate_sum";
        case ObjectiveKind::noisy_target_distance: return "noisy_target_distance";
    }
    return "unknown";
}

ObjectiveKind objective_kind_from_string(const std::string& name) {
    for (auto kind : {ObjectiveKind::target_distance, ObjectiveKind::quantized_rating, ObjectiveKind::mode_density,
                      ObjectiveKind::coordinate_sum, ObjectiveKind::noisy_target_distance}) {
        if (to_string(kind) == name) return kind;
    }
    throw ConfigError("unknown objective kind '" + name + "'");
}

Objective::Objective(ObjectiveSpec spec, std::optional<MixtureModel> data_model)
    : spec_(std::move(spec)), data_model_(std::move(data_model)) {
    if (!(spec_.noise_std >= 0.0)) throw ConfigError("objective: noise_std must be >= 0");
    switch (spec_.kind) {
        case ObjectiveKind::target_distance:
        case ObjectiveKind::noisy_target_distance:
        case ObjectiveKind::quantized_rating:
            if (spec_.target.size() == 0) throw ConfigError("objective: " + to_string(spec_.kind) + " needs a target");
            break;
        case ObjectiveKind::mode_density:
            if (!data_model_) throw ConfigError("objective: mode_density needs the data mixture");
            break;
        case ObjectiveKind::coordinate_sum: break;
    }
    if (spec_.kind == ObjectiveKind::noisy_target_distance && spec_.noise_std == 0.0) {
        throw ConfigError("objective: noisy_target_distance needs noise_std > 0");
    }
    if (spec_.kind == ObjectiveKind::quantized_rating && !(spec_.scale > 0.0)) {
        throw ConfigError("objective: rating scale must be positive");
    }
}

double Objective::noiseless(const Vector& x) const {
    switch (spec_.kind) {
        case ObjectiveKind::target_distance:
        case ObjectiveKind::noisy_target_distance: {
            require_dim(x, spec_.target.size(), "objective input");
            const double d2 = (x - spec_.target).squaredNorm();
            return spec_.squared ? d2 : std::sqrt(d2);
        }
        case ObjectiveKind::quantized_rating: {
            require_dim(x, spec_.target.size(), "objective input");
            const double raw = std::round(5.0 - spec_.scale * (x - spec_.target).norm());
            return -std::clamp(raw, 1.0, 5.0);
        }
        case ObjectiveKind::mode_density: return -data_model_->log_density(x);
        case ObjectiveKind::coordinate_sum:
            if (spec_.coefficients.size() == 0) return x.sum();
            require_dim(x, spec_.coefficients.size(), "objective input");
            return spec_.coefficients.dot(x);
    }
    return 0.0;
}

double Objective::evaluate(const Vector& x, BudgetMeter& meter) const {
    const double value = noiseless(x);
    const std::size_t tick = meter.charge();
    if (spec_.noise_std == 0.0) return value;
    Rng rng = make_rng({spec_.noise_seed, static_cast<std::uint64_t>(tick)});
    return value + spec_.noise_std * std::normal_distribution<double>(0.0, 1.0)(rng);
}

std::string Objective::user_sense() const {
    return spec_.kind == ObjectiveKind::quantized_rating ? "maximize" : "minimize";
}

}  // namespace fastdirect
