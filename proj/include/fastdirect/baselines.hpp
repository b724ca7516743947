// Copyright 2026 The fastdirect Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "fastdirect/dataset.hpp"
#include "fastdirect/objective.hpp"
#include "fastdirect/sampler.hpp"
#include "fastdirect/trace.hpp"

namespace fastdirect {

/// Zeroth-order noise optimization (DNO, black-box mode).
struct ZoConfig {
    int perturbations = 2;      // q
    double mu = 0.1;            // perturbation scale
    int iterations = 10;        // T
    double learning_rate = 0.0; // gamma; <= 0 means 0.1 * mu
    bool normalize_by_mu = false;
    double jacobian_step = 1e-6;  // forward-difference step for the chain pullback

    void validate() const;
    double effective_learning_rate() const { return learning_rate > 0.0 ? learning_rate : 0.1 * mu; }
    std::size_t evaluations() const { return static_cast<std::size_t>(iterations) * (perturbations + 1); }
};

/// (1/q) sum_i (f_i - f) (x_i - x), optionally divided by mu.
Vector zo_estimate(const Vector& base_x, double base_value, std::span<const Vector> perturbed_x,
                   std::span<const double> perturbed_values, double mu, bool normalize_by_mu);

struct ZoGradient {
    Vector estimate;            // gradient estimate w.r.t. the generated x
    Vector base_x;
    double base_value = 0.0;
    std::vector<Vector> points;  // all q + 1 evaluated outputs, base first
    std::vector<double> values;  // their objective values
};

/// Evaluates the base point and q perturbed chains E + mu * xi_i: q + 1 objective evaluations.
ZoGradient zo_gradient(const NoiseSequence& noise, const Objective& objective, const Sampler& sampler,
                       const ZoConfig& config, BudgetMeter& meter, Rng& rng);

/// Vector-Jacobian product v^T dM/dE by forward differences of the chain; no objective queries.
Vector chain_pullback(const NoiseSequence& noise, const Vector& base_x, const Vector& v, const Sampler& sampler,
                      double step);

struct DnoResult {
    Vector x;                                  // chain output of the optimized noise
    std::size_t evaluations = 0;
    std::vector<std::vector<Vector>> points;   // per iteration, q + 1 evaluated outputs
    std::vector<std::vector<double>> values;   // per iteration, q + 1 values
    bool complete = true;
};

DnoResult dno_run(const ZoConfig& config, const Sampler& sampler, const Objective& objective, BudgetMeter& meter,
                  Rng rng);

struct CohortResult {
    std::vector<DnoResult> runs;
    RunTrace trace;        // row t aggregates iteration t of every repetition
    QueryDataset dataset;  // repetition-major; batch_index is the iteration
    bool complete = true;
};

/// M independent repetitions; repetition m uses rng stream (seed, m).
CohortResult dno_cohort(const ZoConfig& config, int repetitions, const Sampler& sampler, const Objective& objective,
                        BudgetMeter& meter, std::uint64_t seed);

struct RandomSearchResult {
    Vector best_x;
    double best_value = 0.0;
    RunTrace trace;  // one row per `row_size` evaluations
    QueryDataset dataset;
    bool complete = true;
};

RandomSearchResult random_search(std::size_t budget, const Sampler& sampler, const Objective& objective,
                                 BudgetMeter& meter, std::uint64_t seed, std::size_t row_size = 1);

}  // namespace fastdirect
