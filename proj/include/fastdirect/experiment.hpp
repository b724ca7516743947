// Copyright 2026 The fastdirect Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "fastdirect/config.hpp"

namespace fastdirect {

/// Everything one seed of an experiment produced.
struct SeedRun {
    std::uint64_t seed = 0;
    RunTrace trace;                        // empty for gnso
    QueryDataset dataset;                  // every evaluated point
    std::vector<Vector> samples;           // final batch / repetition outputs / best point / guided sample
    std::vector<double> distances;         // gnso only: ||x* - x_K|| per iteration
    std::optional<PseudoTargetModel> model;  // fast_direct only
    std::size_t queries_spent = 0;         // audited meter reading
    bool complete = true;
};

/// Seed k of an experiment uses master + k; the objective noise stream is offset the same way.
std::uint64_t seed_for(const ExperimentConfig& config, int k);

/// Runs one seed in memory without touching the filesystem.
SeedRun run_seed(const ExperimentConfig& config, int k);

struct ExperimentResult {
    std::vector<SeedRun> runs;
    std::filesystem::path directory;
    bool complete = true;
};

/**
 * Runs every seed and writes, under config.output_directory:
 *   manifest.json            version, resolved config, per-seed summary
 *   seed-<k>/trace.csv       RunTrace (not for gnso)
 *   seed-<k>/dataset.csv     QueryDataset (not for gnso)
 *   seed-<k>/samples.csv     instance,x0..x{d-1},log_density
 *   seed-<k>/distances.csv   gnso only: iteration,distance
 */
ExperimentResult run_experiment(const ExperimentConfig& config);

enum class AblationKind { step_size, batch_size, direction_Kprime };

std::string to_string(AblationKind kind);
AblationKind ablation_kind_from_string(const std::string& name);

struct AblationCell {
    std::string label;
    ExperimentConfig config;
};

/**
 * Grid cells derived from base. Without explicit values: step sizes base * {0.25, 0.5, 1, 2, 4},
 * batch sizes {4, 8, 16, 32}, truncation halvings {0, 1, 2, 3}. Explicit values are absolute
 * step sizes, batch sizes or halvings. Batch-size cells keep N and rescale the budget to N * B.
 */
std::vector<AblationCell> ablation_grid(AblationKind kind, const ExperimentConfig& base,
                                        const std::optional<std::vector<double>>& values = std::nullopt);

/// Named value lists for ablation grids (e.g. "paper-step-size", "paper-batch-size").
std::vector<double> ablation_grid_preset(const std::string& name);

/// Runs each cell into base.output_directory / <kind> / <label>.
std::vector<ExperimentResult> ablation_suite(AblationKind kind, const ExperimentConfig& base,
                                             const std::optional<std::vector<double>>& values = std::nullopt);

struct FreezeSeedReport {
    std::uint64_t seed = 0;
    double guided_mean = 0.0;
    double unguided_mean = 0.0;
    double improvement = 0.0;  // (unguided - guided) / |unguided|
};

struct FreezeReport {
    std::vector<FreezeSeedReport> seeds;
    double median_improvement = 0.0;
    std::size_t training_queries_before = 0;
    std::size_t training_queries_after = 0;
    std::size_t audit_evaluations = 0;  // evaluations spent scoring the batches, on a separate meter
};

/**
 * Frozen-model generalization: fits the configured pseudo-target model on data once, then for each
 * seed guides a fresh batch (B instances, N inner iterations) without querying the objective. The
 * same noise run without guidance is the unguided reference. Both batches are scored on an audit
 * meter that is independent of the training dataset.
 */
FreezeReport freeze_eval(const QueryDataset& data, const ExperimentConfig& config);

/// freeze_eval plus artifacts under config.output_directory / "freeze-eval".
FreezeReport freeze_eval_to_disk(const QueryDataset& data, const ExperimentConfig& config);

}  // namespace fastdirect
