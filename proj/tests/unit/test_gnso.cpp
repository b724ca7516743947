// Copyright 2026 The fastdirect Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "fastdirect/gnso.hpp"
#include "helpers.hpp"

using namespace fastdirect;
using testing::vec;

TEST_SUITE("gnso") {
    TEST_CASE("update_noise worked example") {
        const Vector out = update_noise(vec({3.0, 4.0}), vec({1.0, 0.0}), 2.0, 5.0);
        CHECK(out[0] == doctest::Approx(25.0 / std::sqrt(41.0)).epsilon(1e-14));
        CHECK(out[1] == doctest::Approx(20.0 / std::sqrt(41.0)).epsilon(1e-14));
        CHECK(out[0] == doctest::Approx(3.9043).epsilon(1e-4));
        CHECK(out[1] == doctest::Approx(3.1235).epsilon(1e-4));
    }

    TEST_CASE("update_noise identities") {
        const Vector eps = vec({0.3, -1.1, 2.0});
        CHECK(update_noise(eps, vec({1.0, 2.0, 3.0}), 0.0, eps.norm()) == eps);
        CHECK(update_noise(eps, Vector::Zero(3), 5.0, eps.norm()) == eps);
        CHECK_THROWS_AS(update_noise(vec({1.0, 0.0}), vec({-1.0, 0.0}), 1.0, 1.0), DegenerateUpdateError);
        CHECK_THROWS_AS(update_noise(eps, vec({1.0, 0.0, 0.0}), 1.0, 0.0), DegenerateUpdateError);
        CHECK_THROWS_AS(update_noise(eps, vec({1.0, 0.0}), 1.0, 1.0), DimensionError);
    }

    TEST_CASE("update_noise preserves the frozen norm") {
        Rng rng = make_rng({21});
        std::uniform_int_distribution<int> dim(1, 64);
        std::uniform_real_distribution<double> scale(-6.0, 6.0);
        for (int trial = 0; trial < 20000; ++trial) {
            const int d = dim(rng);
            const Vector eps = standard_normal(d, rng) * std::pow(10.0, scale(rng) / 3.0);
            const Vector direction = standard_normal(d, rng) * std::pow(10.0, scale(rng));
            const double alpha = std::pow(10.0, scale(rng));
            const double frozen = std::pow(10.0, scale(rng) / 2.0);
            const Vector out = update_noise(eps, direction, alpha, frozen);
            CHECK(std::abs(out.norm() - frozen) <= 1e-9 * frozen);
        }
    }

    TEST_CASE("truncation step rounding") {
        const DirectionRule rule{DirectionKind::truncated, 0};
        CHECK(rule.truncation_step(16) == 16);
        CHECK(DirectionRule{DirectionKind::truncated, 1}.truncation_step(16) == 8);
        CHECK(DirectionRule{DirectionKind::truncated, 2}.truncation_step(16) == 4);
        CHECK(DirectionRule{DirectionKind::truncated, 3}.truncation_step(16) == 2);
        CHECK(DirectionRule{DirectionKind::truncated, 3}.truncation_step(6) == 1);
        CHECK(DirectionRule{DirectionKind::truncated, 3}.truncation_step(1) == 1);
        CHECK_THROWS_AS(DirectionRule({DirectionKind::truncated, 4}).truncation_step(16), ConfigError);
        CHECK(direction_kind_from_string("predicted") == DirectionKind::predicted);
        CHECK_THROWS_AS(direction_kind_from_string("diagonal"), ConfigError);
    }

    TEST_CASE("universal direction is shared by every noise") {
        const auto sampler = testing::benchmark_sampler(8);
        Rng rng = make_rng({22});
        auto noise = NoiseSequence::sample(8, 2, rng);
        const auto before = noise;
        const auto trajectory = sampler.run(noise);
        const Vector target = vec({-1.0, 0.0});
        const double alpha = 0.3;
        update_sequence(noise, DirectionRule{}, target, trajectory, alpha);
        const Vector direction = target - trajectory.final_state();
        for (int k = 0; k <= 8; ++k) {
            CHECK(guidance_direction(DirectionRule{}, target, trajectory, k) == direction);
            CHECK(noise[k] == update_noise(before[k], direction, alpha, before.frozen_norm(k)));
        }
    }

    TEST_CASE("stepwise and predicted directions use per-step states") {
        const auto sampler = testing::benchmark_sampler(8);
        Rng rng = make_rng({23});
        const auto trajectory = sampler.run(NoiseSequence::sample(8, 2, rng));
        const Vector target = vec({1.0, 0.5});
        CHECK(guidance_direction({DirectionKind::stepwise, 0}, target, trajectory, 3) == target - trajectory.states[3]);
        CHECK(guidance_direction({DirectionKind::predicted, 0}, target, trajectory, 3) == target - trajectory.predicted[3]);
        CHECK(guidance_direction({DirectionKind::truncated, 2}, target, trajectory, 7) == target - trajectory.states[2]);
    }

    TEST_CASE("zero step size leaves the noise untouched") {
        const auto sampler = testing::benchmark_sampler(8);
        Rng rng = make_rng({24});
        auto noise = NoiseSequence::sample(8, 2, rng);
        const auto before = noise;
        const auto unguided = sampler.generate(noise);
        for (int t = 0; t < 10; ++t) update_sequence(noise, DirectionRule{}, vec({-1.0, 0.0}), sampler.run(noise), 0.0);
        CHECK(noise == before);
        CHECK(sampler.generate(noise) == unguided);
    }

    TEST_CASE("a single iteration returns the unguided chain") {
        const auto sampler = testing::benchmark_sampler(8);
        Rng rng = make_rng({25});
        auto noise = NoiseSequence::sample(8, 2, rng);
        const Vector unguided = sampler.generate(noise);
        const Vector target = vec({-1.0, 0.0});
        GnsoConfig config;
        config.iterations = 1;
        const auto result = gnso_run(target, config, noise, sampler);
        CHECK(result.trajectory.final_state() == unguided);
        REQUIRE(result.distances.size() == 1);
        CHECK(result.distances[0] == (target - unguided).norm());
        CHECK(result.final_distance == result.distances.back());
        CHECK(result.alpha == doctest::Approx(0.5 / (target - unguided).norm()));
    }

    TEST_CASE("one large step fixes the sign in a 1-D degenerate chain") {
        // x_K = c * eps_1 with eps_1 confined to {+n, -n} by the projection.
        const double c = 0.7, n = 1.3;
        for (const double target : {2.5, 0.1, -0.4, -3.0}) {
            const double wrong = target > 0 ? -n : n;
            const double x = c * wrong;
            const double alpha = 2.0 * 2.0 * n / std::abs(target - x);
            const Vector eps = update_noise(vec({wrong}), vec({target - x}), alpha, n);
            CHECK(std::abs(std::abs(eps[0]) - n) < 1e-12);
            CHECK(std::signbit(c * eps[0]) == std::signbit(target));
        }
    }

    TEST_CASE("noise-free target matches the plain run") {
        const auto sampler = testing::benchmark_sampler(8);
        Rng rng = make_rng({26});
        auto a = NoiseSequence::sample(8, 2, rng);
        auto b = a;
        GnsoConfig config;
        config.iterations = 5;
        Rng unused = make_rng({27});
        const auto plain = gnso_run(vec({-1.0, 0.0}), config, a, sampler);
        const auto noisy = gnso_run_noisy_target(vec({-1.0, 0.0}), 0.0, config, b, sampler, unused);
        CHECK(plain.distances == noisy.distances);
        CHECK(a == b);
        CHECK_FALSE(noisy.reference.has_value());

        Rng guide = make_rng({28});
        auto c = NoiseSequence::sample(8, 2, rng);
        const auto perturbed = gnso_run_noisy_target(vec({-1.0, 0.0}), 3.0, config, c, sampler, guide);
        REQUIRE(perturbed.reference.has_value());
        CHECK(*perturbed.reference == vec({-1.0, 0.0}));
        CHECK(perturbed.target != vec({-1.0, 0.0}));
    }

    TEST_CASE("median distance trends down across blocks of ten iterations") {
        const auto sampler = testing::benchmark_sampler(16);
        const Vector target = vec({-1.0, 0.0});
        GnsoConfig config;
        config.iterations = 50;
        std::vector<std::vector<double>> distances;
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            Rng rng = make_rng({29, seed});
            auto noise = NoiseSequence::sample(16, 2, rng);
            distances.push_back(gnso_run(target, config, noise, sampler).distances);
        }
        double previous = std::numeric_limits<double>::infinity();
        for (int block = 0; block < 5; ++block) {
            std::vector<double> at;
            for (const auto& d : distances) at.push_back(d[block * 10 + 9]);
            std::sort(at.begin(), at.end());
            const double median = 0.5 * (at[9] + at[10]);
            CHECK(median <= previous);
            previous = median;
        }
    }
}
