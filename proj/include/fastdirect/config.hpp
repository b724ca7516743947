// Copyright 2026 The fastdirect Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "fastdirect/baselines.hpp"
#include "fastdirect/fast_direct.hpp"
#include "fastdirect/gnso.hpp"
#include "fastdirect/objective.hpp"
#include "fastdirect/schedule.hpp"

namespace fastdirect {

enum class MethodKind { fast_direct, dno, random_search, gnso };

std::string to_string(MethodKind kind);
MethodKind method_kind_from_string(const std::string& name);

struct ScheduleSpec {
    SamplerKind kind = SamplerKind::ddim_eta;
    int steps = 16;
    double eta = 1.0;

    NoiseSchedule build() const { return NoiseSchedule::preset(kind, steps, eta); }
};

struct DnoSettings {
    ZoConfig zo;
    int repetitions = 8;  // M
};

struct RandomSearchSettings {
    std::size_t row_size = 8;  // evaluations aggregated per trace row
};

struct GnsoSettings {
    GnsoConfig gnso;
    Vector target;
    double target_noise_std = 0.0;
};

/// Fully resolved experiment description. Parsed from JSON; see README for the key reference.
struct ExperimentConfig {
    std::vector<MixtureComponent> components;
    ScheduleSpec schedule;
    MethodKind method = MethodKind::fast_direct;
    FastDirectConfig fast_direct;
    DnoSettings dno;
    RandomSearchSettings random_search;
    GnsoSettings gnso;
    ObjectiveSpec objective;
    std::size_t budget = 0;
    std::uint64_t master_seed = 0;
    int seed_count = 1;
    std::filesystem::path output_directory = "runs";
    bool record_wall_time = false;
    unsigned threads = 1;

    MixtureModel model() const { return MixtureModel(components); }
    Sampler sampler() const { return Sampler(model(), schedule.build()); }

    /// Evaluations the method consumes per seed: N*B, T*(q+1)*M, the search budget, or 0.
    std::size_t required_budget() const;

    /// Throws ConfigError naming the offending field.
    void validate() const;
};

/// Parses JSON text. A top-level "preset" key is applied first and overridden by the remaining keys.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::filesystem::path& path);

/// Named configuration presets, as JSON text.
std::vector<std::string> preset_names();
std::string preset_json(const std::string& name);

/// Three-component 2-D mixture used by the desk benchmarks.
std::vector<MixtureComponent> benchmark_components();

/// Canonical JSON text for a resolved configuration; parse_config(config_to_json(c)) reproduces c.
std::string config_to_json(const ExperimentConfig& config);

}  // namespace fastdirect
