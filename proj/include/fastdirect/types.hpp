// Copyright 2026 The fastdirect Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

#include <Eigen/Core>

namespace fastdirect {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Invalid model, schedule or method configuration.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Dimension of an input does not agree with the model it is used with.
class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

inline void require_dim(const Vector& v, Eigen::Index dim, const char* what) {
    if (v.size() != dim) {
        throw DimensionError(std::string(what) + ": expected dimension " + std::to_string(dim) +
                             ", got " + std::to_string(v.size()));
    }
}

}  // namespace fastdirect
