// Copyright 2026 The fastdirect Authors
// SPDX-License-Identifier: Apache-2.0

#include "fastdirect/baselines.hpp"

#include <algorithm>

namespace fastdirect {

void ZoConfig::validate() const {
    if (perturbations < 1) throw ConfigError("dno: perturbations (q) must be >= 1");
    if (!(mu > 0.0)) throw ConfigError("dno: mu must be positive");
    if (iterations < 0) throw ConfigError("dno: iterations must be >= 0");
    if (!(jacobian_step > 0.0)) throw ConfigError("dno: jacobian_step must be positive");
}

Vector zo_estimate(const Vector& base_x, double base_value, std::span<const Vector> perturbed_x,
                   std::span<const double> perturbed_values, double mu, bool normalize_by_mu) {
    if (perturbed_x.size() != perturbed_values.size() || perturbed_x.empty()) {
        throw std::invalid_argument("zo_estimate: need q >= 1 matching samples and values");
    }
    Vector estimate = Vector::Zero(base_x.size());
    for (std::size_t i = 0; i < perturbed_x.size(); ++i) {
        estimate += (perturbed_values[i] - base_value) * (perturbed_x[i] - base_x);
    }
    estimate /= static_cast<double>(perturbed_x.size());
    if (normalize_by_mu) estimate /= mu;
    return estimate;
}

ZoGradient zo_gradient(const NoiseSequence& noise, const Objective& objective, const Sampler& sampler,
                       const ZoConfig& config, BudgetMeter& meter, Rng& rng) {
    config.validate();
    ZoGradient out;
    out.base_x = sampler.generate(noise);
    out.base_value = objective.evaluate(out.base_x, meter);
    out.points.push_back(out.base_x);
    out.values.push_back(out.base_value);

    const Vector flat = noise.flatten();
    NoiseSequence perturbed = noise;
    std::vector<Vector> xs;
    std::vector<double> fs;
    for (int i = 0; i < config.perturbations; ++i) {
        perturbed.assign_flat(flat + config.mu * standard_normal(flat.size(), rng));
        xs.push_back(sampler.generate(perturbed));
        fs.push_back(objective.evaluate(xs.back(), meter));
        out.points.push_back(xs.back());
        out.values.push_back(fs.back());
    }
    out.estimate = zo_estimate(out.base_x, out.base_value, xs, fs, config.mu, config.normalize_by_mu);
    return out;
}

Vector chain_pullback(const NoiseSequence& noise, const Vector& base_x, const Vector& v, const Sampler& sampler,
                      double step) {
    const Vector flat = noise.flatten();
    Vector grad(flat.size());
    NoiseSequence shifted = noise;
    for (Eigen::Index j = 0; j < flat.size(); ++j) {
        Vector probe = flat;
        probe[j] += step;
        shifted.assign_flat(probe);
        grad[j] = v.dot(sampler.generate(shifted) - base_x) / step;
    }
    return grad;
}

DnoResult dno_run(const ZoConfig& config, const Sampler& sampler, const Objective& objective, BudgetMeter& meter,
                  Rng rng) {
    config.validate();
    NoiseSequence noise = NoiseSequence::sample(sampler.steps(), sampler.dim(), rng);
    DnoResult result;
    const double gamma = config.effective_learning_rate();
    for (int t = 0; t < config.iterations; ++t) {
        ZoGradient g;
        const std::size_t before = meter.spent();
        try {
            g = zo_gradient(noise, objective, sampler, config, meter, rng);
        } catch (const BudgetExceeded&) {
            result.evaluations += meter.spent() - before;
            result.complete = false;
            break;
        }
        result.evaluations += g.values.size();
        result.points.push_back(g.points);
        result.values.push_back(g.values);
        const Vector grad = chain_pullback(noise, g.base_x, g.estimate, sampler, config.jacobian_step);
        noise.assign_flat(noise.flatten() - gamma * grad);
    }
    result.x = sampler.generate(noise);
    return result;
}

CohortResult dno_cohort(const ZoConfig& config, int repetitions, const Sampler& sampler, const Objective& objective,
                        BudgetMeter& meter, std::uint64_t seed) {
    if (repetitions < 1) throw ConfigError("dno: repetitions (M) must be >= 1");
    CohortResult cohort;
    for (int m = 0; m < repetitions; ++m) {
        cohort.runs.push_back(dno_run(config, sampler, objective, meter, make_rng({seed, static_cast<std::uint64_t>(m)})));
        if (!cohort.runs.back().complete) {
            cohort.complete = false;
            break;
        }
    }
    for (const auto& run : cohort.runs) {
        for (std::size_t t = 0; t < run.values.size(); ++t) {
            for (std::size_t j = 0; j < run.values[t].size(); ++j) {
                cohort.dataset.append(run.points[t][j], run.values[t][j], static_cast<int>(t) + 1);
            }
        }
    }
    for (int t = 0; t < config.iterations; ++t) {
        std::vector<double> values;
        for (const auto& run : cohort.runs) {
            if (static_cast<std::size_t>(t) < run.values.size()) {
                values.insert(values.end(), run.values[t].begin(), run.values[t].end());
            }
        }
        if (values.empty()) break;
        cohort.trace.add_batch(t + 1, values);
    }
    if (!cohort.complete) cohort.trace.mark_incomplete();
    return cohort;
}

RandomSearchResult random_search(std::size_t budget, const Sampler& sampler, const Objective& objective,
                                 BudgetMeter& meter, std::uint64_t seed, std::size_t row_size) {
    if (budget < 1) throw ConfigError("random_search: budget must be >= 1");
    row_size = std::max<std::size_t>(1, row_size);
    RandomSearchResult result;
    std::vector<double> row;
    int row_index = 0;
    for (std::size_t n = 0; n < budget; ++n) {
        Rng rng = make_rng({seed, static_cast<std::uint64_t>(n)});
        const Vector x = sampler.generate(NoiseSequence::sample(sampler.steps(), sampler.dim(), rng));
        double y = 0.0;
        try {
            y = objective.evaluate(x, meter);
        } catch (const BudgetExceeded&) {
            result.complete = false;
            break;
        }
        if (n == 0 || y < result.best_value) {
            result.best_value = y;
            result.best_x = x;
        }
        row.push_back(y);
        result.dataset.append(x, y, row_index + 1);
        if (row.size() == row_size) {
            result.trace.add_batch(++row_index, row);
            row.clear();
        }
    }
    if (!row.empty()) result.trace.add_batch(++row_index, row);
    if (!result.complete) result.trace.mark_incomplete();
    return result;
}

}  // namespace fastdirect
