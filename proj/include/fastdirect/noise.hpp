// Copyright 2026 The fastdirect Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "fastdirect/rng.hpp"
#include "fastdirect/types.hpp"

namespace fastdirect {

/**
 * The K+1 noises eps_0..eps_K that drive one sampler run, plus their norms as
 * measured at construction. The norms never change afterwards; guided updates
 * re-project onto them.
 */
class NoiseSequence {
public:
    explicit NoiseSequence(std::vector<Vector> eps);

    static NoiseSequence sample(int steps, Eigen::Index dim, Rng& rng);

    int steps() const { return static_cast<int>(eps_.size()) - 1; }
    Eigen::Index dim() const { return eps_.front().size(); }

    const Vector& operator[](int k) const { return eps_.at(k); }
    const std::vector<Vector>& values() const { return eps_; }
    double frozen_norm(int k) const { return frozen_norms_.at(k); }
    const std::vector<double>& frozen_norms() const { return frozen_norms_; }

    void set(int k, Vector value);

    /// Concatenation [eps_0; ...; eps_K].
    Vector flatten() const;
    /// Replaces all noises from a flattened vector; frozen norms are untouched.
    void assign_flat(const Vector& flat);

    friend bool operator==(const NoiseSequence& a, const NoiseSequence& b);

private:
    std::vector<Vector> eps_;
    std::vector<double> frozen_norms_;
};

}  // namespace fastdirect
