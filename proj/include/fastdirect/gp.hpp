// Copyright 2026 The fastdirect Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "fastdirect/dataset.hpp"
#include "fastdirect/kernel.hpp"

namespace fastdirect {

class GpFitError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/**
 * Zero-mean GP posterior mean fitted to a snapshot of a QueryDataset:
 *
 *   f(x) = k(x, X)^T (K(X, X) + reg * I)^{-1} y
 *
 * Immutable once fitted; concurrent reads are safe. The empty surrogate
 * predicts 0 with a zero gradient.
 */
class GpSurrogate {
public:
    GpSurrogate() = default;

    /// regularizer defaults to 1e-3 times the mean diagonal of the Gram matrix.
    static GpSurrogate fit(const QueryDataset& data, const KernelSpec& kernel,
                           std::optional<double> regularizer = std::nullopt);

    bool empty() const { return points_.cols() == 0; }
    Eigen::Index size() const { return points_.cols(); }
    Eigen::Index dim() const { return points_.rows(); }
    const KernelSpec& kernel() const { return kernel_; }
    double regularizer() const { return regularizer_; }
    const Vector& weights() const { return weights_; }
    const Matrix& points() const { return points_; }
    const Vector& targets() const { return targets_; }
    /// ||(K + reg I) w - y|| at fit time.
    double solve_residual() const { return residual_; }

    double posterior_mean(const Vector& x) const;

    /// sum_i w_i g'(r_i)/r_i (x - x_i).
    Vector posterior_mean_gradient(const Vector& x) const;

    /// x_K - grad f(x_K).
    Vector pseudo_target(const Vector& x_K) const;

    /// Relative norm of the gradient component outside span{x, x_1..x_n}.
    double span_residual(const Vector& x) const;

private:
    void check_query(const Vector& x) const;

    KernelSpec kernel_;
    double regularizer_ = 0.0;
    Matrix points_;  // d x n
    Vector targets_;
    Vector weights_;
    double residual_ = 0.0;
};

/// x of the record with the smallest y, earliest on ties; nullopt when empty.
std::optional<Vector> pseudo_target_historical(const QueryDataset& data);

}  // namespace fastdirect
