// Copyright 2026 The fastdirect Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <vector>

#include "fastdirect/dataset.hpp"
#include "fastdirect/gnso.hpp"
#include "fastdirect/objective.hpp"
#include "fastdirect/pseudo_target.hpp"
#include "fastdirect/trace.hpp"

namespace fastdirect {

struct FastDirectConfig {
    int batch_queries = 30;  // N
    int batch_size = 8;      // B
    StepSize step;
    SurrogateSettings surrogate;
    std::uint64_t seed = 0;
    unsigned threads = 1;
    bool record_wall_time = false;

    void validate() const;
};

struct FastDirectResult {
    std::vector<Vector> batch;  // x_K of the last outer iteration, instance order
    PseudoTargetModel model;    // refit on the full dataset
    QueryDataset dataset;
    RunTrace trace;
    bool complete = true;
};

/// Settings for guidance with a frozen pseudo-target model and no objective access.
struct FrozenConfig {
    int batch_size = 8;
    int inner_iterations = 30;
    StepSize step;
    std::uint64_t seed = 0;
    unsigned threads = 1;

    void validate() const;
};

/**
 * One instance of the guided inner loop: samples a fresh noise sequence from
 * rng, then for t = 1..iterations runs the chain and moves every noise toward
 * the model's pseudo target for the current x_K. Returns the x_K of the last
 * chain run.
 */
Vector guide_instance(const Sampler& sampler, const PseudoTargetModel& model, int iterations, const StepSize& step,
                      Rng rng);

/// Batch loop with a shared pseudo-target model refit once per batch query.
FastDirectResult fast_direct_run(const FastDirectConfig& config, const Sampler& sampler, const Objective& objective,
                                 BudgetMeter& meter);

/// Generalization mode: same inner loop, zero objective queries.
std::vector<Vector> fast_direct_run_frozen(const PseudoTargetModel& model, const FrozenConfig& config,
                                           const Sampler& sampler);

}  // namespace fastdirect
