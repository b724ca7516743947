// Copyright 2026 The fastdirect Authors
// SPDX-License-Identifier: Apache-2.0

// Standalone acceptance suite. Prints one PASS/FAIL line per criterion and exits
// nonzero when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fastdirect/baselines.hpp"
#include "fastdirect/compare.hpp"
#include "fastdirect/experiment.hpp"
#include "fastdirect/fast_direct.hpp"
#include "fastdirect/gnso.hpp"

using namespace fastdirect;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

std::string format(const char* fmt, auto... args) {
    char buffer[512];
    std::snprintf(buffer, sizeof buffer, fmt, args...);
    return buffer;
}

MixtureModel benchmark_model() { return MixtureModel(benchmark_components()); }

Sampler benchmark_sampler() { return Sampler(benchmark_model(), NoiseSchedule::ddim(16, 1.0)); }

QueryDataset random_dataset(int n, int d, Rng& rng) {
    QueryDataset data;
    for (int i = 0; i < n; ++i) {
        const Vector x = standard_normal(d, rng);
        data.append(x, std::sin(x.sum()) + 0.1 * x.squaredNorm(), 1);
    }
    return data;
}

constexpr std::uint64_t gnso_seeds = 20;
const Vector gnso_target = (Vector(2) << -1.0, 0.0).finished();

NoiseSequence gnso_noise(const Sampler& sampler, std::uint64_t seed) {
    Rng rng = make_rng({seed});
    return NoiseSequence::sample(sampler.steps(), sampler.dim(), rng);
}

GnsoResult gnso_with(const Sampler& sampler, std::uint64_t seed, DirectionRule rule) {
    GnsoConfig config;
    config.direction = rule;
    NoiseSequence noise = gnso_noise(sampler, seed);
    return gnso_run(gnso_target, config, noise, sampler);
}

Outcome norm_preservation() {
    Rng rng = make_rng({101});
    std::uniform_int_distribution<int> dims(1, 64);
    std::uniform_real_distribution<double> alphas(0.0, 10.0);
    double worst = 0.0;
    constexpr int calls = 1'000'000;
    for (int i = 0; i < calls; ++i) {
        const int d = dims(rng);
        const Vector eps = standard_normal(d, rng);
        const Vector direction = standard_normal(d, rng);
        const double frozen = eps.norm();
        const Vector updated = update_noise(eps, direction, alphas(rng), frozen);
        worst = std::max(worst, std::abs(updated.norm() - frozen) / frozen);
    }
    return {worst <= 1e-9, format("max relative norm error %.3e over %d calls", worst, calls)};
}

Outcome span_property() {
    Rng rng = make_rng({102});
    const int dims[] = {8, 16, 32};
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const int d = dims[i % 3];
        const int n = std::uniform_int_distribution<int>(1, d - 1)(rng);
        const auto family = (i / 3) % 2 ? KernelFamily::matern52 : KernelFamily::gaussian;
        const auto gp = GpSurrogate::fit(random_dataset(n, d, rng), KernelSpec::with_default_lengthscale(family, d));
        worst = std::max(worst, gp.span_residual(standard_normal(d, rng)));
    }
    return {worst <= 1e-8, format("max span residual %.3e over 1000 instances", worst)};
}

Outcome gradient_check() {
    Rng rng = make_rng({103});
    std::uniform_int_distribution<int> dims(1, 32), counts(1, 50);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const int d = dims(rng), n = counts(rng);
        const auto family = i % 2 ? KernelFamily::matern52 : KernelFamily::gaussian;
        const auto gp = GpSurrogate::fit(random_dataset(n, d, rng), KernelSpec::with_default_lengthscale(family, d));
        const Vector x = standard_normal(d, rng);
        Vector numeric(d);
        const double h = 1e-6;
        for (int j = 0; j < d; ++j) {
            Vector up = x, down = x;
            up[j] += h;
            down[j] -= h;
            numeric[j] = (gp.posterior_mean(up) - gp.posterior_mean(down)) / (2.0 * h);
        }
        const Vector analytic = gp.posterior_mean_gradient(x);
        const double scale = std::max(analytic.norm(), numeric.norm());
        if (scale > 0.0) worst = std::max(worst, (analytic - numeric).norm() / scale);
    }
    return {worst <= 1e-5, format("max relative gradient error %.3e over 1000 instances", worst)};
}

Outcome sampler_moments() {
    const auto model = benchmark_model();
    const Vector true_mean = model.mean();
    const Matrix true_cov = model.covariance();
    constexpr int chains = 10000;
    constexpr int steps = 200;
    std::string detail;
    bool pass = true;
    for (auto kind : {SamplerKind::ddim_eta, SamplerKind::euler_sde}) {
        const Sampler sampler(model, NoiseSchedule::preset(kind, steps));
        std::vector<Vector> xs;
        Vector mean = Vector::Zero(2);
        for (int i = 0; i < chains; ++i) {
            Rng rng = make_rng({104, static_cast<std::uint64_t>(i)});
            xs.push_back(sampler.generate(NoiseSequence::sample(steps, 2, rng)));
            mean += xs.back();
        }
        mean /= chains;
        Matrix cov = Matrix::Zero(2, 2);
        for (const auto& x : xs) cov += (x - mean) * (x - mean).transpose();
        cov /= chains - 1;
        double worst = 0.0;
        for (int j = 0; j < 2; ++j) worst = std::max(worst, std::abs(mean[j] - true_mean[j]) / std::sqrt(cov(j, j) / chains));
        for (int a = 0; a < 2; ++a) {
            for (int b = a; b < 2; ++b) {
                double var = 0.0;
                for (const auto& x : xs) {
                    const double p = (x[a] - mean[a]) * (x[b] - mean[b]) - cov(a, b);
                    var += p * p;
                }
                var /= chains - 1;
                worst = std::max(worst, std::abs(cov(a, b) - true_cov(a, b)) / std::sqrt(var / chains));
            }
        }
        pass = pass && worst <= 3.0;
        detail += format("%s K=%d max |z| %.2f; ", to_string(kind).c_str(), steps, worst);
    }
    detail.resize(detail.size() - 2);
    return {pass, detail};
}

Outcome gnso_convergence() {
    const auto sampler = benchmark_sampler();
    std::vector<double> ratios, universal, stepwise;
    for (std::uint64_t seed = 0; seed < gnso_seeds; ++seed) {
        const auto u = gnso_with(sampler, seed, {DirectionKind::universal, 0});
        const double initial = (gnso_target - sampler.generate(gnso_noise(sampler, seed))).norm();
        ratios.push_back(u.final_distance / initial);
        universal.push_back(u.final_distance);
        stepwise.push_back(gnso_with(sampler, seed, {DirectionKind::stepwise, 0}).final_distance);
    }
    const double ratio = median(ratios), mu = median(universal), ms = median(stepwise);
    return {ratio <= 0.05 && ms > mu,
            format("median final/initial %.4f; median final distance universal %.4f, stepwise %.4f", ratio, mu, ms)};
}

double unguided_median_log_density(const Sampler& sampler) {
    std::vector<double> values;
    for (std::uint64_t i = 0; i < 4000; ++i) {
        Rng rng = make_rng({105, i});
        values.push_back(sampler.model().log_density(sampler.generate(NoiseSequence::sample(sampler.steps(), 2, rng))));
    }
    return median(values);
}

Outcome noisy_target() {
    const auto sampler = benchmark_sampler();
    const double reference = unguided_median_log_density(sampler);
    int hits = 0;
    std::vector<double> values;
    for (std::uint64_t seed = 0; seed < gnso_seeds; ++seed) {
        Rng rng = make_rng({seed});
        NoiseSequence noise = NoiseSequence::sample(sampler.steps(), sampler.dim(), rng);
        const auto result = gnso_run_noisy_target(gnso_target, 3.0, GnsoConfig{}, noise, sampler, rng);
        values.push_back(sampler.model().log_density(result.trajectory.final_state()));
        hits += values.back() >= reference;
    }
    return {hits >= 16, format("%d/20 seeds at or above unguided median log-density %.3f (median guided %.3f)", hits,
                               reference, median(values))};
}

Outcome truncated_direction() {
    const auto sampler = benchmark_sampler();
    std::vector<double> full, quarter;
    for (std::uint64_t seed = 0; seed < gnso_seeds; ++seed) {
        for (int halvings : {0, 2}) {
            const auto r = gnso_with(sampler, seed, {DirectionKind::truncated, halvings});
            (halvings ? quarter : full).push_back(sampler.model().log_density(r.trajectory.final_state()));
        }
    }
    const double mf = median(full), mq = median(quarter);
    return {mq < mf, format("median log-density K'=K %.3f, K'=K/4 %.3f", mf, mq)};
}

struct EfficiencyRuns {
    std::vector<SeedRun> fast_direct, dno, random_search;
    ExperimentConfig fast_direct_config, dno_config;
};

EfficiencyRuns efficiency_runs() {
    EfficiencyRuns runs;
    runs.fast_direct_config = parse_config(preset_json("desk-benchmark"));
    runs.dno_config = parse_config(preset_json("desk-dno"));
    const auto rs_config = parse_config(preset_json("desk-random-search"));
    for (int k = 0; k < 10; ++k) {
        runs.fast_direct.push_back(run_seed(runs.fast_direct_config, k));
        runs.dno.push_back(run_seed(runs.dno_config, k));
        runs.random_search.push_back(run_seed(rs_config, k));
    }
    return runs;
}

Outcome fast_direct_efficiency(const EfficiencyRuns& runs) {
    int wins = 0;
    std::string gains;
    for (std::size_t k = 0; k < runs.fast_direct.size(); ++k) {
        const auto& fd = runs.fast_direct[k].trace;
        const auto e = efficiency(fd, runs.dno[k].trace, BudgetAxis::queries);
        const bool beats_search = fd.accumulated_best() < runs.random_search[k].trace.accumulated_best();
        const bool win = e.gain && *e.gain >= 2.0 && beats_search;
        wins += win;
        gains += e.gain ? format("%.2f%s ", *e.gain, beats_search ? "" : "(rs)") : std::string("- ");
    }
    gains.pop_back();
    return {wins >= 8, format("%d/10 seeds; per-seed gain vs DNO: %s", wins, gains.c_str())};
}

Outcome budget_exactness(const EfficiencyRuns& runs) {
    const auto& fd = runs.fast_direct_config.fast_direct;
    const auto& zo = runs.dno_config.dno.zo;
    const std::size_t fd_expected = static_cast<std::size_t>(fd.batch_queries * fd.batch_size);
    const std::size_t dno_expected = zo.evaluations() * static_cast<std::size_t>(runs.dno_config.dno.repetitions);
    bool pass = true;
    for (const auto& r : runs.fast_direct) pass = pass && r.queries_spent == fd_expected && r.trace.queries_spent() == fd_expected;
    for (const auto& r : runs.dno) pass = pass && r.queries_spent == dno_expected && r.trace.queries_spent() == dno_expected;
    return {pass, format("Fast Direct meters %zu (N*B = %zu), DNO meters %zu (T*(q+1)*M = %zu)",
                         runs.fast_direct[0].queries_spent, fd_expected, runs.dno[0].queries_spent, dno_expected)};
}

Outcome frozen_generalization(const EfficiencyRuns& runs) {
    auto config = runs.fast_direct_config;
    config.master_seed = 500;
    config.seed_count = 20;
    const auto& data = runs.fast_direct[0].dataset;
    const auto report = freeze_eval(data, config);
    const bool no_queries = report.training_queries_after == report.training_queries_before &&
                            data.query_count() == runs.fast_direct_config.budget;
    return {no_queries && report.median_improvement >= 0.25,
            format("median improvement %.1f%% over 20 fresh seeds; training queries %zu -> %zu",
                   100.0 * report.median_improvement, report.training_queries_before, report.training_queries_after)};
}

Outcome single_batch_neutrality() {
    const auto sampler = benchmark_sampler();
    constexpr int n = 4000;
    FastDirectConfig config;
    config.batch_queries = 1;
    config.batch_size = n;
    config.seed = 106;
    BudgetMeter meter;
    const Objective objective({ObjectiveKind::target_distance, gnso_target});
    const auto guided = fast_direct_run(config, sampler, objective, meter).batch;
    std::vector<Vector> unguided;
    for (std::uint64_t i = 0; i < n; ++i) {
        Rng rng = make_rng({107, i});
        unguided.push_back(sampler.generate(NoiseSequence::sample(sampler.steps(), 2, rng)));
    }
    auto moments = [](const std::vector<Vector>& xs) {
        Vector mean = Vector::Zero(2), sq = Vector::Zero(2);
        for (const auto& x : xs) mean += x;
        mean /= static_cast<double>(xs.size());
        for (const auto& x : xs) sq += (x - mean).cwiseAbs2();
        return std::pair{mean, Vector(sq / static_cast<double>(xs.size() - 1))};
    };
    const auto [ma, va] = moments(guided);
    const auto [mb, vb] = moments(unguided);
    double worst = 0.0;
    for (int j = 0; j < 2; ++j) worst = std::max(worst, std::abs(ma[j] - mb[j]) / std::sqrt((va[j] + vb[j]) / n));
    return {worst <= 3.0, format("max |z| %.2f over %d samples per arm", worst, n)};
}

std::map<std::string, std::string> csv_files(const std::filesystem::path& root) {
    std::map<std::string, std::string> files;
    for (const auto& entry : std::filesystem::recursive_directory_iterator(root)) {
        if (entry.path().extension() != ".csv") continue;
        std::ifstream in(entry.path(), std::ios::binary);
        std::ostringstream text;
        text << in.rdbuf();
        files[std::filesystem::relative(entry.path(), root).string()] = text.str();
    }
    return files;
}

Outcome determinism() {
    const auto root = std::filesystem::current_path() / "acceptance-determinism";
    std::filesystem::remove_all(root);
    std::size_t compared = 0;
    bool pass = true;
    for (const auto& preset : {"desk-benchmark", "desk-dno", "desk-random-search", "desk-gnso"}) {
        auto config = parse_config(preset_json(preset));
        config.seed_count = 3;
        for (const char* copy : {"a", "b"}) {
            config.output_directory = root / preset / copy;
            (void)run_experiment(config);
        }
        const auto a = csv_files(root / preset / "a");
        const auto b = csv_files(root / preset / "b");
        pass = pass && !a.empty() && a == b;
        compared += a.size();
    }
    std::filesystem::remove_all(root);
    return {pass, format("%zu CSV files byte-identical across repeated runs", compared)};
}

}  // namespace

int main() {
    int failures = 0;
    auto report = [&](int id, double limit_seconds, const std::function<Outcome()>& criterion) {
        const auto start = std::chrono::steady_clock::now();
        Outcome outcome;
        try {
            outcome = criterion();
        } catch (const std::exception& e) {
            outcome = {false, std::string("threw: ") + e.what()};
        }
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool in_time = limit_seconds <= 0.0 || seconds < limit_seconds;
        const bool pass = outcome.pass && in_time;
        failures += !pass;
        std::printf("%s criterion %d: %s [%.1f s%s]\n", pass ? "PASS" : "FAIL", id, outcome.detail.c_str(), seconds,
                    in_time ? "" : ", over time limit");
        std::fflush(stdout);
    };

    report(1, 10, norm_preservation);
    report(2, 30, span_property);
    report(3, 60, gradient_check);
    report(4, 60, sampler_moments);
    report(5, 120, gnso_convergence);
    report(6, 120, noisy_target);
    report(7, 120, truncated_direction);

    EfficiencyRuns runs;
    report(8, 600, [&] {
        runs = efficiency_runs();
        return fast_direct_efficiency(runs);
    });
    report(9, 0, [&] { return budget_exactness(runs); });
    report(10, 120, [&] { return frozen_generalization(runs); });
    report(11, 30, single_batch_neutrality);
    report(12, 0, determinism);

    std::printf("%d of 12 criteria passed\n", 12 - failures);
    return failures == 0 ? 0 : 1;
}
