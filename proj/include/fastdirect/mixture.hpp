// Copyright 2026 The fastdirect Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "fastdirect/rng.hpp"
#include "fastdirect/types.hpp"

namespace fastdirect {

/// Scaling of a clean point z into a noisy state x = signal * z + noise * n, n ~ N(0, I).
struct NoiseLevel {
    double signal = 1.0;
    double noise = 0.0;
};

struct MixtureComponent {
    double weight = 1.0;
    Vector mean;
    Matrix covariance;
};

/**
 * Gaussian mixture data distribution together with the exact marginals of its
 * noised versions. Every noised marginal is again a mixture, with means
 * signal * mu_i and covariances signal^2 * Sigma_i + noise^2 * I, so the score
 * and the posterior mean E[z | x] are available in closed form.
 *
 * Immutable after construction and safe for concurrent use.
 */
class MixtureModel {
public:
    explicit MixtureModel(std::vector<MixtureComponent> components);

    /// Equal-covariance convenience constructor: every component gets variance * I.
    static MixtureModel isotropic(const std::vector<double>& weights, const std::vector<Vector>& means,
                                  double variance);

    Eigen::Index dim() const { return dim_; }
    const std::vector<MixtureComponent>& components() const { return components_; }

    double log_density(const Vector& x) const { return log_density(x, NoiseLevel{}); }
    double log_density(const Vector& x, NoiseLevel level) const;

    /// grad_x log p_level(x).
    Vector score(const Vector& x, NoiseLevel level) const;

    /// E[z | x] for x = signal * z + noise * n (Tweedie posterior mean).
    Vector posterior_mean(const Vector& x, NoiseLevel level) const;

    Vector sample(Rng& rng) const;

    Vector mean() const;
    Matrix covariance() const;

private:
    struct Evaluated;
    Evaluated evaluate(const Vector& x, NoiseLevel level) const;

    std::vector<MixtureComponent> components_;
    Eigen::Index dim_ = 0;
    std::vector<Matrix> sample_factors_;
};

}  // namespace fastdirect
