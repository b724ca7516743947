// Copyright 2026 The fastdirect Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

#include "fastdirect/types.hpp"

namespace fastdirect {

using Rng = std::mt19937_64;

/// Deterministic generator for a (master, stream...) coordinate, e.g. (seed, batch, instance).
inline Rng make_rng(std::initializer_list<std::uint64_t> coords) {
    std::seed_seq seq(coords.begin(), coords.end());
    return Rng(seq);
}

inline Vector standard_normal(Eigen::Index dim, Rng& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    Vector v(dim);
    for (Eigen::Index i = 0; i < dim; ++i) v[i] = normal(rng);
    return v;
}

}  // namespace fastdirect
