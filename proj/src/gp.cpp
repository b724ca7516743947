// Copyright 2026 The fastdirect Authors
// SPDX-License-Identifier: Apache-2.0

#include "fastdirect/gp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/Cholesky>
#include <Eigen/QR>

namespace fastdirect {

namespace {

constexpr double kResidualTolerance = 1e-8;
constexpr int kRefinementSteps = 3;

std::string duplicate_report(const Matrix& points) {
    std::ostringstream out;
    int found = 0;
    for (Eigen::Index i = 0; i < points.cols() && found < 8; ++i) {
        for (Eigen::Index j = i + 1; j < points.cols() && found < 8; ++j) {
            if (points.col(i) == points.col(j)) {
                out << (found ? ", " : "") << '(' << i << ", " << j << ')';
                ++found;
            }
        }
    }
    return found ? "duplicate records " + out.str() : "no exact duplicates found";
}

}  // namespace

GpSurrogate GpSurrogate::fit(const QueryDataset& data, const KernelSpec& kernel, std::optional<double> regularizer) {
    kernel.validate();
    GpSurrogate gp;
    gp.kernel_ = kernel;
    const auto n = static_cast<Eigen::Index>(data.size());
    if (regularizer && !(*regularizer >= 0.0)) throw GpFitError("gp: regularizer must be nonnegative");
    gp.regularizer_ = regularizer.value_or(1e-3 * kernel.g(0.0));
    if (n == 0) return gp;

    const auto d = data.dim();
    gp.points_.resize(d, n);
    gp.targets_.resize(n);
    std::ostringstream bad;
    for (Eigen::Index i = 0; i < n; ++i) {
        const auto& r = data[static_cast<std::size_t>(i)];
        gp.points_.col(i) = r.x;
        gp.targets_[i] = r.y;
        if (!std::isfinite(r.y) || !r.x.allFinite()) bad << (bad.tellp() > 0 ? ", " : "") << i;
    }
    if (bad.tellp() > 0) throw GpFitError("gp: non-finite values in records " + bad.str());

    Matrix gram(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        gram(i, i) = kernel.g(0.0);
        for (Eigen::Index j = 0; j < i; ++j) {
            gram(i, j) = gram(j, i) = kernel.g((gp.points_.col(i) - gp.points_.col(j)).norm());
        }
    }
    if (!regularizer) {
        gp.regularizer_ = 1e-3 * gram.diagonal().mean();
    }
    gram.diagonal().array() += gp.regularizer_;

    Eigen::LLT<Matrix> llt(gram);
    if (llt.info() != Eigen::Success) {
        throw GpFitError("gp: regularized Gram matrix is not positive definite (" + duplicate_report(gp.points_) + ")");
    }
    gp.weights_ = llt.solve(gp.targets_);
    Vector residual = gp.targets_ - gram * gp.weights_;
    const double tolerance = kResidualTolerance * gp.targets_.norm();
    for (int step = 0; step < kRefinementSteps && residual.norm() > 0.1 * tolerance; ++step) {
        gp.weights_ += llt.solve(residual);
        residual = gp.targets_ - gram * gp.weights_;
    }
    gp.residual_ = residual.norm();
    if (!gp.weights_.allFinite() || gp.residual_ > tolerance) {
        throw GpFitError("gp: linear solve residual " + std::to_string(gp.residual_) + " exceeds tolerance (" +
                         duplicate_report(gp.points_) + ")");
    }
    return gp;
}

void GpSurrogate::check_query(const Vector& x) const {
    if (!empty()) require_dim(x, dim(), "gp query");
}

double GpSurrogate::posterior_mean(const Vector& x) const {
    check_query(x);
    double value = 0.0;
    for (Eigen::Index i = 0; i < size(); ++i) value += weights_[i] * kernel_.g((x - points_.col(i)).norm());
    return value;
}

Vector GpSurrogate::posterior_mean_gradient(const Vector& x) const {
    check_query(x);
    Vector grad = Vector::Zero(x.size());
    for (Eigen::Index i = 0; i < size(); ++i) {
        const Vector delta = x - points_.col(i);
        grad += weights_[i] * kernel_.g_prime_over_r(delta.norm()) * delta;
    }
    return grad;
}

Vector GpSurrogate::pseudo_target(const Vector& x_K) const {
    if (empty()) return x_K;
    return x_K - posterior_mean_gradient(x_K);
}

double GpSurrogate::span_residual(const Vector& x) const {
    check_query(x);
    const Vector grad = posterior_mean_gradient(x);
    Matrix spanning(x.size(), size() + 1);
    spanning.col(0) = x;
    spanning.rightCols(size()) = points_;
    Eigen::ColPivHouseholderQR<Matrix> qr(spanning);
    const auto rank = qr.rank();
    if (rank == x.size()) return 0.0;
    const Matrix basis = Matrix(qr.householderQ()).leftCols(rank);
    const Vector outside = grad - basis * (basis.transpose() * grad);
    return outside.norm() / std::max(grad.norm(), std::numeric_limits<double>::epsilon());
}

std::optional<Vector> pseudo_target_historical(const QueryDataset& data) {
    if (data.empty()) return std::nullopt;
    std::size_t best = 0;
    for (std::size_t i = 1; i < data.size(); ++i) {
        if (data[i].y < data[best].y) best = i;
    }
    return data[best].x;
}

}  // namespace fastdirect
