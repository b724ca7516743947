// Copyright 2026 The fastdirect Authors
// SPDX-License-Identifier: Apache-2.0

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fastdirect/compare.hpp"
#include "fastdirect/experiment.hpp"

namespace fd = fastdirect;

namespace {

int cmd_run(const std::string& config_path) {
    const auto config = fd::load_config(config_path);
    const auto result = fd::run_experiment(config);
    for (const auto& run : result.runs) {
        if (config.method == fd::MethodKind::gnso) {
            std::printf("seed %llu  final_distance %.6g\n", static_cast<unsigned long long>(run.seed),
                        run.distances.empty() ? 0.0 : run.distances.back());
        } else {
            std::printf("seed %llu  queries %zu  accumulated_best %.6g%s\n", static_cast<unsigned long long>(run.seed),
                        run.queries_spent, run.trace.accumulated_best(), run.complete ? "" : "  (incomplete)");
        }
    }
    std::printf("wrote %s\n", result.directory.string().c_str());
    return result.complete ? 0 : 3;
}

int cmd_compare(const std::vector<std::string>& paths, const std::string& out, const std::string& axis_name) {
    const auto axis = fd::budget_axis_from_string(axis_name);
    std::vector<fd::NamedTrace> traces;
    for (const auto& p : paths) traces.push_back({p, fd::RunTrace::read_csv(std::filesystem::path(p))});
    const auto rows = fd::compare(traces, axis);
    if (out.empty()) {
        fd::write_report(std::cout, rows, axis);
    } else {
        fd::write_report(std::filesystem::path(out), rows, axis);
        std::printf("wrote %s\n", out.c_str());
    }
    return 0;
}

int cmd_ablate(const std::string& kind_name, const std::string& config_path, const std::vector<double>& values,
               const std::string& grid) {
    const auto kind = fd::ablation_kind_from_string(kind_name);
    const auto config = fd::load_config(config_path);
    std::optional<std::vector<double>> chosen;
    if (!values.empty()) chosen = values;
    if (!grid.empty()) chosen = fd::ablation_grid_preset(grid);
    bool complete = true;
    for (const auto& result : fd::ablation_suite(kind, config, chosen)) {
        std::printf("wrote %s\n", result.directory.string().c_str());
        complete = complete && result.complete;
    }
    return complete ? 0 : 3;
}

int cmd_freeze_eval(const std::string& dataset_path, const std::string& config_path) {
    const auto config = fd::load_config(config_path);
    const auto data = fd::QueryDataset::read_csv(std::filesystem::path(dataset_path));
    const auto report = fd::freeze_eval_to_disk(data, config);
    for (const auto& s : report.seeds) {
        std::printf("seed %llu  guided %.6g  unguided %.6g  improvement %.1f%%\n", static_cast<unsigned long long>(s.seed),
                    s.guided_mean, s.unguided_mean, 100.0 * s.improvement);
    }
    std::printf("median improvement %.1f%%  training queries %zu -> %zu  audit evaluations %zu\n",
                100.0 * report.median_improvement, report.training_queries_before, report.training_queries_after,
                report.audit_evaluations);
    return 0;
}

int cmd_preset(const std::string& name) {
    if (name.empty()) {
        for (const auto& n : fd::preset_names()) std::printf("%s\n", n.c_str());
        return 0;
    }
    std::printf("%s\n", fd::config_to_json(fd::parse_config(fd::preset_json(name))).c_str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"fdlab: query-efficient guided diffusion experiments"};
    app.set_version_flag("--version", FASTDIRECT_VERSION);
    app.require_subcommand(1);

    std::string config_path;
    auto* run = app.add_subcommand("run", "Run an experiment config");
    run->add_option("config", config_path, "JSON config file")->required()->check(CLI::ExistingFile);

    std::vector<std::string> traces;
    std::string out;
    std::string axis = "batches";
    auto* cmp = app.add_subcommand("compare", "Efficiency report over trace CSVs");
    cmp->add_option("traces", traces, "trace.csv files")->required()->check(CLI::ExistingFile);
    cmp->add_option("--out", out, "report CSV path (default: stdout)");
    cmp->add_option("--axis", axis, "budget axis")->check(CLI::IsMember({"batches", "queries"}));

    std::string kind;
    std::vector<double> values;
    std::string grid;
    auto* ablate = app.add_subcommand("ablate", "Run an ablation grid");
    ablate->add_option("kind", kind, "step_size | batch_size | direction_Kprime")->required();
    ablate->add_option("config", config_path, "JSON config file")->required()->check(CLI::ExistingFile);
    auto* values_opt = ablate->add_option("--values", values, "explicit grid values")->delimiter(',');
    ablate->add_option("--grid", grid, "named grid: paper-step-size, paper-batch-size, desk-step-size, desk-batch-size")
        ->excludes(values_opt);

    std::string dataset_path;
    auto* freeze = app.add_subcommand("freeze-eval", "Frozen-model generalization on fresh seeds");
    freeze->add_option("dataset", dataset_path, "dataset.csv from a fast_direct run")->required()->check(CLI::ExistingFile);
    freeze->add_option("config", config_path, "JSON config file")->required()->check(CLI::ExistingFile);

    std::string preset_name;
    auto* preset = app.add_subcommand("preset", "List presets, or print one fully resolved");
    preset->add_option("name", preset_name, "preset name");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run) return cmd_run(config_path);
        if (*cmp) return cmd_compare(traces, out, axis);
        if (*ablate) return cmd_ablate(kind, config_path, values, grid);
        if (*freeze) return cmd_freeze_eval(dataset_path, config_path);
        if (*preset) return cmd_preset(preset_name);
    } catch (const fd::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
