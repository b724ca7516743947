// Copyright 2026 The fastdirect Authors
// SPDX-License-Identifier: Apache-2.0

#include "fastdirect/kernel.hpp"

#include <cmath>

namespace fastdirect {

std::string to_string(KernelFamily family) {
    return family == KernelFamily::gaussian ? "gaussian" : "matern52";
}

KernelFamily kernel_family_from_string(const std::string& name) {
    if (name == "gaussian") return KernelFamily::gaussian;
    if (name == "matern52" || name == "matern-5/2") return KernelFamily::matern52;
    throw ConfigError("unknown kernel family '" + name + "' (expected gaussian or matern52)");
}

KernelSpec KernelSpec::with_default_lengthscale(KernelFamily family, Eigen::Index dim) {
    return {family, std::sqrt(static_cast<double>(dim))};
}

void KernelSpec::validate() const {
    if (!(lengthscale > 0.0) || !std::isfinite(lengthscale)) throw ConfigError("kernel: lengthscale must be positive");
}

double KernelSpec::g(double r) const {
    const double u = r / lengthscale;
    if (family == KernelFamily::gaussian) return std::exp(-0.5 * u * u);
    const double s = std::sqrt(5.0) * u;
    return (1.0 + s + s * s / 3.0) * std::exp(-s);
}

double KernelSpec::g_prime_over_r(double r) const {
    const double l2 = lengthscale * lengthscale;
    const double u = r / lengthscale;
    if (family == KernelFamily::gaussian) return -std::exp(-0.5 * u * u) / l2;
    // d/dr (1 + s + s^2/3) e^{-s} = -(5 r / (3 l^2)) (1 + s) e^{-s},  s = sqrt(5) r / l
    const double s = std::sqrt(5.0) * u;
    return -(5.0 / (3.0 * l2)) * (1.0 + s) * std::exp(-s);
}

}  // namespace fastdirect
