// Copyright 2026 The fastdirect Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "fastdirect/config.hpp"
#include "fastdirect/sampler.hpp"

namespace testing {

using fastdirect::Matrix;
using fastdirect::Vector;

inline fastdirect::MixtureModel benchmark_model() { return fastdirect::MixtureModel(fastdirect::benchmark_components()); }

inline fastdirect::Sampler benchmark_sampler(int steps = 16) {
    return fastdirect::Sampler(benchmark_model(), fastdirect::NoiseSchedule::ddim(steps, 1.0));
}

inline Vector vec(std::initializer_list<double> values) {
    Vector v(static_cast<Eigen::Index>(values.size()));
    Eigen::Index i = 0;
    for (double x : values) v[i++] = x;
    return v;
}

inline double relative_error(const Vector& a, const Vector& b) {
    const double scale = std::max(a.norm(), b.norm());
    return scale == 0.0 ? 0.0 : (a - b).norm() / scale;
}

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

/// Fresh scratch directory under the current working directory.
inline std::filesystem::path scratch_dir(const std::string& name) {
    const auto dir = std::filesystem::current_path() / "scratch" / name;
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

}  // namespace testing
