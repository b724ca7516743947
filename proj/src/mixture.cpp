// Copyright 2026 The fastdirect Authors
// SPDX-License-Identifier: Apache-2.0

#include "fastdirect/mixture.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include <Eigen/Cholesky>

namespace fastdirect {

namespace {

constexpr double kWeightTolerance = 1e-12;

}  // namespace

struct MixtureModel::Evaluated {
    std::vector<double> responsibilities;
    std::vector<Vector> precision_residuals;  // C_i^{-1} (x - signal * mu_i)
    double log_density = 0.0;
};

MixtureModel::MixtureModel(std::vector<MixtureComponent> components) : components_(std::move(components)) {
    if (components_.empty()) throw ConfigError("mixture: at least one component is required");
    dim_ = components_.front().mean.size();
    if (dim_ == 0) throw ConfigError("mixture: zero-dimensional component mean");

    double total = 0.0;
    for (std::size_t i = 0; i < components_.size(); ++i) {
        const auto& c = components_[i];
        const std::string where = "mixture component " + std::to_string(i);
        if (!(c.weight > 0.0) || !std::isfinite(c.weight)) throw ConfigError(where + ": weight must be positive");
        if (c.mean.size() != dim_) throw ConfigError(where + ": mean dimension mismatch");
        if (c.covariance.rows() != dim_ || c.covariance.cols() != dim_) {
            throw ConfigError(where + ": covariance must be " + std::to_string(dim_) + "x" + std::to_string(dim_));
        }
        const double scale = std::max(1.0, c.covariance.cwiseAbs().maxCoeff());
        if ((c.covariance - c.covariance.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
            throw ConfigError(where + ": covariance is not symmetric");
        }
        Eigen::LLT<Matrix> llt(c.covariance);
        if (llt.info() != Eigen::Success) throw ConfigError(where + ": covariance is not positive definite");
        sample_factors_.push_back(llt.matrixL());
        total += c.weight;
    }
    if (std::abs(total - 1.0) > kWeightTolerance) {
        throw ConfigError("mixture: weights sum to " + std::to_string(total) + ", expected 1");
    }
}

MixtureModel MixtureModel::isotropic(const std::vector<double>& weights, const std::vector<Vector>& means,
                                     double variance) {
    if (weights.size() != means.size()) throw ConfigError("mixture: weights and means differ in length");
    std::vector<MixtureComponent> components;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        const auto d = means[i].size();
        components.push_back({weights[i], means[i], variance * Matrix::Identity(d, d)});
    }
    return MixtureModel(std::move(components));
}

MixtureModel::Evaluated MixtureModel::evaluate(const Vector& x, NoiseLevel level) const {
    require_dim(x, dim_, "mixture");
    const double a2 = level.signal * level.signal;
    const double s2 = level.noise * level.noise;

    Evaluated out;
    out.responsibilities.resize(components_.size());
    out.precision_residuals.resize(components_.size());
    std::vector<double> log_terms(components_.size());

    for (std::size_t i = 0; i < components_.size(); ++i) {
        const auto& c = components_[i];
        Matrix effective = a2 * c.covariance;
        effective.diagonal().array() += s2;
        Eigen::LLT<Matrix> llt(effective);
        if (llt.info() != Eigen::Success) {
            throw ConfigError("mixture: effective covariance is not positive definite at signal=" +
                              std::to_string(level.signal) + ", noise=" + std::to_string(level.noise));
        }
        const Vector residual = x - level.signal * c.mean;
        const Vector whitened = llt.matrixL().solve(residual);
        const double log_det = 2.0 * llt.matrixL().toDenseMatrix().diagonal().array().log().sum();
        log_terms[i] = std::log(c.weight) - 0.5 * whitened.squaredNorm() - 0.5 * log_det -
                       0.5 * static_cast<double>(dim_) * std::log(2.0 * std::numbers::pi);
        out.precision_residuals[i] = llt.solve(residual);
    }

    const double peak = *std::max_element(log_terms.begin(), log_terms.end());
    double sum = 0.0;
    for (std::size_t i = 0; i < log_terms.size(); ++i) {
        out.responsibilities[i] = std::exp(log_terms[i] - peak);
        sum += out.responsibilities[i];
    }
    for (auto& r : out.responsibilities) r /= sum;
    out.log_density = peak + std::log(sum);
    return out;
}

double MixtureModel::log_density(const Vector& x, NoiseLevel level) const {
    return evaluate(x, level).log_density;
}

Vector MixtureModel::score(const Vector& x, NoiseLevel level) const {
    const auto ev = evaluate(x, level);
    Vector g = Vector::Zero(dim_);
    for (std::size_t i = 0; i < components_.size(); ++i) {
        g -= ev.responsibilities[i] * ev.precision_residuals[i];
    }
    return g;
}

Vector MixtureModel::posterior_mean(const Vector& x, NoiseLevel level) const {
    const auto ev = evaluate(x, level);
    Vector m = Vector::Zero(dim_);
    for (std::size_t i = 0; i < components_.size(); ++i) {
        const auto& c = components_[i];
        // E[z | x, component i] = mu_i + a Sigma_i C_i^{-1} (x - a mu_i)
        m += ev.responsibilities[i] * (c.mean + level.signal * (c.covariance * ev.precision_residuals[i]));
    }
    return m;
}

Vector MixtureModel::sample(Rng& rng) const {
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    const double u = uniform(rng);
    std::size_t pick = components_.size() - 1;
    double cumulative = 0.0;
    for (std::size_t i = 0; i < components_.size(); ++i) {
        cumulative += components_[i].weight;
        if (u < cumulative) {
            pick = i;
            break;
        }
    }
    return components_[pick].mean + sample_factors_[pick] * standard_normal(dim_, rng);
}

Vector MixtureModel::mean() const {
    Vector m = Vector::Zero(dim_);
    for (const auto& c : components_) m += c.weight * c.mean;
    return m;
}

Matrix MixtureModel::covariance() const {
    const Vector m = mean();
    Matrix cov = Matrix::Zero(dim_, dim_);
    for (const auto& c : components_) {
        const Vector delta = c.mean - m;
        cov += c.weight * (c.covariance + delta * delta.transpose());
    }
    return cov;
}

}  // namespace fastdirect
