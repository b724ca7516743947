// Copyright 2026 The fastdirect Authors
// SPDX-License-Identifier: Apache-2.0

#include "fastdirect/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "fastdirect/csv.hpp"

namespace fastdirect {

namespace {

using json = nlohmann::ordered_json;

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
}

void write_samples(const std::filesystem::path& path, const std::vector<Vector>& samples, const MixtureModel& model) {
    std::ostringstream out;
    out << "instance";
    for (Eigen::Index j = 0; j < model.dim(); ++j) out << ",x" << j;
    out << ",log_density\n";
    for (std::size_t i = 0; i < samples.size(); ++i) {
        out << i;
        for (Eigen::Index j = 0; j < samples[i].size(); ++j) out << ',' << csv::format_number(samples[i][j]);
        out << ',' << csv::format_number(model.log_density(samples[i])) << '\n';
    }
    write_text(path, out.str());
}

void write_distances(const std::filesystem::path& path, const std::vector<double>& distances) {
    std::ostringstream out;
    out << "iteration,distance\n";
    for (std::size_t t = 0; t < distances.size(); ++t) out << t + 1 << ',' << csv::format_number(distances[t]) << '\n';
    write_text(path, out.str());
}

std::string seed_directory(int k) { return "seed-" + std::to_string(k); }

std::string format_label(double value) {
    std::ostringstream out;
    out << value;
    return out.str();
}

double median(std::vector<double> values) {
    if (values.empty()) return 0.0;
    std::sort(values.begin(), values.end());
    const std::size_t mid = values.size() / 2;
    return values.size() % 2 ? values[mid] : 0.5 * (values[mid - 1] + values[mid]);
}

FrozenConfig frozen_config(const ExperimentConfig& config, std::uint64_t seed) {
    FrozenConfig frozen;
    frozen.batch_size = config.fast_direct.batch_size;
    frozen.inner_iterations = config.fast_direct.batch_queries;
    frozen.step = config.fast_direct.step;
    frozen.seed = seed;
    frozen.threads = config.threads;
    return frozen;
}

}  // namespace

std::uint64_t seed_for(const ExperimentConfig& config, int k) { return config.master_seed + static_cast<std::uint64_t>(k); }

SeedRun run_seed(const ExperimentConfig& config, int k) {
    const MixtureModel model = config.model();
    const Sampler sampler(model, config.schedule.build());
    ObjectiveSpec spec = config.objective;
    spec.noise_seed += static_cast<std::uint64_t>(k);
    const Objective objective(spec, model);
    BudgetMeter meter(config.required_budget());

    SeedRun run;
    run.seed = seed_for(config, k);
    switch (config.method) {
        case MethodKind::fast_direct: {
            FastDirectConfig fd = config.fast_direct;
            fd.seed = run.seed;
            fd.threads = config.threads;
            fd.record_wall_time = config.record_wall_time;
            auto result = fast_direct_run(fd, sampler, objective, meter);
            run.trace = std::move(result.trace);
            run.dataset = std::move(result.dataset);
            run.samples = std::move(result.batch);
            run.model = std::move(result.model);
            run.complete = result.complete;
            break;
        }
        case MethodKind::dno: {
            auto cohort = dno_cohort(config.dno.zo, config.dno.repetitions, sampler, objective, meter, run.seed);
            run.trace = std::move(cohort.trace);
            run.dataset = std::move(cohort.dataset);
            for (const auto& r : cohort.runs) run.samples.push_back(r.x);
            run.complete = cohort.complete;
            break;
        }
        case MethodKind::random_search: {
            auto result = random_search(config.budget, sampler, objective, meter, run.seed, config.random_search.row_size);
            run.trace = std::move(result.trace);
            run.dataset = std::move(result.dataset);
            if (result.best_x.size() != 0) run.samples.push_back(result.best_x);
            run.complete = result.complete;
            break;
        }
        case MethodKind::gnso: {
            Rng rng = make_rng({run.seed});
            NoiseSequence noise = NoiseSequence::sample(sampler.steps(), sampler.dim(), rng);
            GnsoResult result = config.gnso.target_noise_std > 0.0
                                    ? gnso_run_noisy_target(config.gnso.target, config.gnso.target_noise_std,
                                                            config.gnso.gnso, noise, sampler, rng)
                                    : gnso_run(config.gnso.target, config.gnso.gnso, noise, sampler);
            run.samples.push_back(result.trajectory.final_state());
            run.distances = std::move(result.distances);
            break;
        }
    }
    run.queries_spent = meter.spent();
    return run;
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
    config.validate();
    const MixtureModel model = config.model();
    ExperimentResult result;
    result.directory = config.output_directory;
    std::filesystem::create_directories(result.directory);

    json seeds = json::array();
    for (int k = 0; k < config.seed_count; ++k) {
        SeedRun run = run_seed(config, k);
        const auto dir = result.directory / seed_directory(k);
        std::filesystem::create_directories(dir);
        json entry = {{"index", k}, {"seed", run.seed}, {"directory", seed_directory(k)}};
        if (config.method == MethodKind::gnso) {
            write_distances(dir / "distances.csv", run.distances);
            entry["final_distance"] = run.distances.empty() ? 0.0 : run.distances.back();
        } else {
            run.trace.write_csv(dir / "trace.csv");
            run.dataset.write_csv(dir / "dataset.csv");
            entry["accumulated_best"] = run.trace.empty() ? json(nullptr) : json(run.trace.accumulated_best());
        }
        write_samples(dir / "samples.csv", run.samples, model);
        entry["queries_spent"] = run.queries_spent;
        entry["complete"] = run.complete;
        seeds.push_back(entry);
        result.complete = result.complete && run.complete;
        result.runs.push_back(std::move(run));
    }

    json manifest;
    manifest["version"] = FASTDIRECT_VERSION;
    manifest["method"] = to_string(config.method);
    manifest["user_sense"] = Objective(config.objective, model).user_sense();
    manifest["config"] = json::parse(config_to_json(config));
    manifest["seeds"] = seeds;
    manifest["complete"] = result.complete;
    write_text(result.directory / "manifest.json", manifest.dump(2) + "\n");
    return result;
}

std::string to_string(AblationKind kind) {
    switch (kind) {
        case AblationKind::step_size: return "step_size";
        case AblationKind::batch_size: return "batch_size";
        case AblationKind::direction_Kprime: return "direction_Kprime";
    }
    return "unknown";
}

AblationKind ablation_kind_from_string(const std::string& name) {
    for (auto kind : {AblationKind::step_size, AblationKind::batch_size, AblationKind::direction_Kprime}) {
        if (to_string(kind) == name) return kind;
    }
    throw ConfigError("unknown ablation '" + name + "' (expected step_size, batch_size or direction_Kprime)");
}

std::vector<double> ablation_grid_preset(const std::string& name) {
    if (name == "paper-step-size") return {20, 40, 80, 160, 320};
    if (name == "paper-batch-size") return {4, 8, 16, 32, 64};
    if (name == "desk-step-size") return {0.125, 0.25, 0.5, 1.0, 2.0};
    if (name == "desk-batch-size") return {4, 8, 16, 32};
    throw ConfigError("unknown ablation grid '" + name + "'");
}

std::vector<AblationCell> ablation_grid(AblationKind kind, const ExperimentConfig& base,
                                        const std::optional<std::vector<double>>& values) {
    std::vector<AblationCell> cells;
    const auto cell_dir = [&](const std::string& label) {
        return base.output_directory / to_string(kind) / label;
    };
    switch (kind) {
        case AblationKind::step_size: {
            if (base.method != MethodKind::fast_direct && base.method != MethodKind::gnso) {
                throw ConfigError("ablation step_size: method must be fast_direct or gnso");
            }
            const StepSize& step = base.method == MethodKind::fast_direct ? base.fast_direct.step : base.gnso.gnso.step;
            std::vector<double> grid;
            if (values) {
                grid = *values;
            } else {
                for (double factor : {0.25, 0.5, 1.0, 2.0, 4.0}) grid.push_back(factor * step.value);
            }
            for (double value : grid) {
                AblationCell cell{"alpha-" + format_label(value), base};
                StepSize& target =
                    base.method == MethodKind::fast_direct ? cell.config.fast_direct.step : cell.config.gnso.gnso.step;
                target.value = value;
                cells.push_back(std::move(cell));
            }
            break;
        }
        case AblationKind::batch_size: {
            if (base.method != MethodKind::fast_direct) throw ConfigError("ablation batch_size: method must be fast_direct");
            const std::vector<double> grid = values ? *values : std::vector<double>{4, 8, 16, 32};
            for (double value : grid) {
                if (value < 1 || value != std::floor(value)) throw ConfigError("ablation batch_size: values must be positive integers");
                AblationCell cell{"B-" + format_label(value), base};
                cell.config.fast_direct.batch_size = static_cast<int>(value);
                cell.config.budget = cell.config.required_budget();
                cells.push_back(std::move(cell));
            }
            break;
        }
        case AblationKind::direction_Kprime: {
            if (base.method != MethodKind::gnso) throw ConfigError("ablation direction_Kprime: method must be gnso");
            const std::vector<double> grid = values ? *values : std::vector<double>{0, 1, 2, 3};
            for (double value : grid) {
                if (value < 0 || value > 3 || value != std::floor(value)) {
                    throw ConfigError("ablation direction_Kprime: values are halvings in 0..3");
                }
                AblationCell cell{"", base};
                cell.config.gnso.gnso.direction = {DirectionKind::truncated, static_cast<int>(value)};
                cell.label = "Kprime-" + std::to_string(cell.config.gnso.gnso.direction.truncation_step(base.schedule.steps));
                cells.push_back(std::move(cell));
            }
            break;
        }
    }
    for (auto& cell : cells) {
        cell.config.output_directory = cell_dir(cell.label);
        cell.config.validate();
    }
    return cells;
}

std::vector<ExperimentResult> ablation_suite(AblationKind kind, const ExperimentConfig& base,
                                             const std::optional<std::vector<double>>& values) {
    std::vector<ExperimentResult> results;
    for (const auto& cell : ablation_grid(kind, base, values)) results.push_back(run_experiment(cell.config));
    return results;
}

FreezeReport freeze_eval(const QueryDataset& data, const ExperimentConfig& config) {
    config.validate();
    if (config.method != MethodKind::fast_direct) throw ConfigError("freeze-eval: method must be fast_direct");
    const MixtureModel mixture = config.model();
    const Sampler sampler(mixture, config.schedule.build());
    const PseudoTargetModel trained = PseudoTargetModel::fit(config.fast_direct.surrogate, data);
    const PseudoTargetModel untrained;

    FreezeReport report;
    report.training_queries_before = data.query_count();
    BudgetMeter audit;
    std::vector<double> improvements;
    for (int k = 0; k < config.seed_count; ++k) {
        ObjectiveSpec spec = config.objective;
        spec.noise_seed += static_cast<std::uint64_t>(k);
        const Objective objective(spec, mixture);
        const FrozenConfig frozen = frozen_config(config, seed_for(config, k));
        const auto guided = fast_direct_run_frozen(trained, frozen, sampler);
        const auto unguided = fast_direct_run_frozen(untrained, frozen, sampler);

        FreezeSeedReport seed{frozen.seed};
        for (const auto& x : guided) seed.guided_mean += objective.evaluate(x, audit);
        for (const auto& x : unguided) seed.unguided_mean += objective.evaluate(x, audit);
        seed.guided_mean /= static_cast<double>(guided.size());
        seed.unguided_mean /= static_cast<double>(unguided.size());
        const double scale = std::abs(seed.unguided_mean);
        seed.improvement = scale > 0.0 ? (seed.unguided_mean - seed.guided_mean) / scale : 0.0;
        improvements.push_back(seed.improvement);
        report.seeds.push_back(seed);
    }
    report.median_improvement = median(improvements);
    report.training_queries_after = data.query_count();
    report.audit_evaluations = audit.spent();
    return report;
}

FreezeReport freeze_eval_to_disk(const QueryDataset& data, const ExperimentConfig& config) {
    FreezeReport report = freeze_eval(data, config);
    const auto dir = config.output_directory / "freeze-eval";
    std::filesystem::create_directories(dir);

    std::ostringstream csv_out;
    csv_out << "seed,guided_mean,unguided_mean,improvement\n";
    for (const auto& s : report.seeds) {
        csv_out << s.seed << ',' << csv::format_number(s.guided_mean) << ',' << csv::format_number(s.unguided_mean) << ','
                << csv::format_number(s.improvement) << '\n';
    }
    write_text(dir / "seeds.csv", csv_out.str());

    json summary;
    summary["version"] = FASTDIRECT_VERSION;
    summary["median_improvement"] = report.median_improvement;
    summary["training_queries_before"] = report.training_queries_before;
    summary["training_queries_after"] = report.training_queries_after;
    summary["audit_evaluations"] = report.audit_evaluations;
    summary["config"] = json::parse(config_to_json(config));
    write_text(dir / "report.json", summary.dump(2) + "\n");
    return report;
}

}  // namespace fastdirect
