// Copyright 2026 The fastdirect Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>

#include "fastdirect/types.hpp"

namespace fastdirect {

enum class KernelFamily { gaussian, matern52 };

std::string to_string(KernelFamily family);
KernelFamily kernel_family_from_string(const std::string& name);

/// Shift-invariant kernel k(z1, z2) = g(||z1 - z2||).
struct KernelSpec {
    KernelFamily family = KernelFamily::gaussian;
    double lengthscale = 1.0;

    /// Lengthscale sqrt(d).
    static KernelSpec with_default_lengthscale(KernelFamily family, Eigen::Index dim);

    void validate() const;

    double g(double r) const;
    /// g'(r) / r, continuously extended to r = 0 (both families are smooth there).
    double g_prime_over_r(double r) const;

    double operator()(const Vector& a, const Vector& b) const { return g((a - b).norm()); }
};

}  // namespace fastdirect
