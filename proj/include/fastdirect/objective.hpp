// Copyright 2026 The fastdirect Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <atomic>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <type_traits>

#include "fastdirect/mixture.hpp"

namespace fastdirect {

class BudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Counts objective evaluations against a hard limit. Increments are atomic.
class BudgetMeter {
public:
    explicit BudgetMeter(std::size_t limit = std::numeric_limits<std::size_t>::max()) : limit_(limit) {}
    BudgetMeter(const BudgetMeter&) = delete;
    BudgetMeter& operator=(const BudgetMeter&) = delete;

    /// Claims one evaluation and returns its 0-based index; throws when the limit is reached.
    std::size_t charge();

    std::size_t limit() const { return limit_; }
    std::size_t spent() const { return spent_.load(); }
    std::size_t remaining() const { return limit_ - spent(); }

private:
    std::size_t limit_;
    std::atomic<std::size_t> spent_{0};
};

enum class ObjectiveKind { target_distance, quantized_rating, mode_density, coordinate_sum, noisy_target_distance };

std::string to_string(ObjectiveKind kind);
ObjectiveKind objective_kind_from_string(const std::string& name);

struct ObjectiveSpec {
    ObjectiveKind kind = ObjectiveKind::target_distance;
    Vector target;              // target_distance, noisy_target_distance, quantized_rating
    bool squared = false;       // target distances: ||x - x*||^2 instead of ||x - x*||
    double scale = 1.0;         // quantized_rating: rating = clamp(round(5 - scale * ||x - x*||), 1, 5)
    Vector coefficients;        // coordinate_sum: c^T x, empty means all ones
    double noise_std = 0.0;     // additive Gaussian evaluation noise
    std::uint64_t noise_seed = 0;
};

/**
 * Black-box objective, always minimized. Ratings are returned negated. The only
 * entry point is evaluate(), which charges the meter and returns a scalar.
 */
class Objective {
public:
    Objective(ObjectiveSpec spec, std::optional<MixtureModel> data_model = std::nullopt);

    const ObjectiveSpec& spec() const { return spec_; }

    double evaluate(const Vector& x, BudgetMeter& meter) const;

    /// "minimize" or "maximize": the sense of the quantity the user reads.
    std::string user_sense() const;

private:
    double noiseless(const Vector& x) const;

    ObjectiveSpec spec_;
    std::optional<MixtureModel> data_model_;
};

static_assert(std::is_same_v<decltype(std::declval<const Objective&>().evaluate(std::declval<const Vector&>(),
                                                                                 std::declval<BudgetMeter&>())),
                             double>,
              "objectives expose values only");

}  // namespace fastdirect
