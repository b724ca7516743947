// Copyright 2026 The fastdirect Authors
// SPDX-License-Identifier: Apache-2.0

#include "fastdirect/noise.hpp"

namespace fastdirect {

NoiseSequence::NoiseSequence(std::vector<Vector> eps) : eps_(std::move(eps)) {
    if (eps_.size() < 2) throw ConfigError("noise sequence: need at least eps_0 and eps_1");
    const auto d = eps_.front().size();
    frozen_norms_.reserve(eps_.size());
    for (const auto& e : eps_) {
        require_dim(e, d, "noise sequence");
        frozen_norms_.push_back(e.norm());
    }
}

NoiseSequence NoiseSequence::sample(int steps, Eigen::Index dim, Rng& rng) {
    std::vector<Vector> eps;
    eps.reserve(steps + 1);
    for (int k = 0; k <= steps; ++k) eps.push_back(standard_normal(dim, rng));
    return NoiseSequence(std::move(eps));
}

void NoiseSequence::set(int k, Vector value) {
    require_dim(value, dim(), "noise sequence");
    eps_.at(k) = std::move(value);
}

Vector NoiseSequence::flatten() const {
    const auto d = dim();
    Vector flat(d * static_cast<Eigen::Index>(eps_.size()));
    for (std::size_t k = 0; k < eps_.size(); ++k) flat.segment(static_cast<Eigen::Index>(k) * d, d) = eps_[k];
    return flat;
}

void NoiseSequence::assign_flat(const Vector& flat) {
    const auto d = dim();
    require_dim(flat, d * static_cast<Eigen::Index>(eps_.size()), "noise sequence (flattened)");
    for (std::size_t k = 0; k < eps_.size(); ++k) eps_[k] = flat.segment(static_cast<Eigen::Index>(k) * d, d);
}

bool operator==(const NoiseSequence& a, const NoiseSequence& b) {
    if (a.eps_.size() != b.eps_.size()) return false;
    for (std::size_t k = 0; k < a.eps_.size(); ++k) {
        if (a.eps_[k] != b.eps_[k] || a.frozen_norms_[k] != b.frozen_norms_[k]) return false;
    }
    return true;
}

}  // namespace fastdirect
