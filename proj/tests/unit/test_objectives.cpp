// Copyright 2026 The fastdirect Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <sstream>
#include <thread>

#include <Eigen/LU>

#include "fastdirect/objective.hpp"
#include "fastdirect/trace.hpp"
#include "helpers.hpp"

using namespace fastdirect;
using testing::vec;

TEST_SUITE("objectives") {
    TEST_CASE("target distance is zero at the target") {
        BudgetMeter meter;
        const Objective plain({ObjectiveKind::target_distance, vec({1.0, 2.0})});
        CHECK(plain.evaluate(vec({1.0, 2.0}), meter) == 0.0);
        CHECK(plain.evaluate(vec({4.0, 6.0}), meter) == 5.0);
        ObjectiveSpec squared{ObjectiveKind::target_distance, vec({1.0, 2.0})};
        squared.squared = true;
        CHECK(Objective(squared).evaluate(vec({4.0, 6.0}), meter) == 25.0);
        CHECK(meter.spent() == 3);
        CHECK(plain.user_sense() == "minimize");
    }

    TEST_CASE("ratings are quantized, clamped and negated") {
        BudgetMeter meter;
        const Objective rating({ObjectiveKind::quantized_rating, vec({0.0, 0.0})});
        CHECK(rating.evaluate(vec({0.0, 0.0}), meter) == -5.0);
        CHECK(rating.evaluate(vec({0.4, 0.0}), meter) == -5.0);
        CHECK(rating.evaluate(vec({0.6, 0.0}), meter) == -4.0);
        CHECK(rating.evaluate(vec({2.2, 0.0}), meter) == -3.0);
        CHECK(rating.evaluate(vec({50.0, 0.0}), meter) == -1.0);
        CHECK(rating.user_sense() == "maximize");
    }

    TEST_CASE("mode density equals the negative mixture log density") {
        const auto model = testing::benchmark_model();
        const Objective density({ObjectiveKind::mode_density}, model);
        BudgetMeter meter;
        for (const auto& c : model.components()) {
            double direct = 0.0;
            for (const auto& k : model.components()) {
                const Matrix cov = k.covariance;
                const Vector diff = c.mean - k.mean;
                const double quad = diff.dot(cov.inverse() * diff);
                direct += k.weight * std::exp(-0.5 * quad) / (2.0 * M_PI * std::sqrt(cov.determinant()));
            }
            CHECK(density.evaluate(c.mean, meter) == doctest::Approx(-std::log(direct)).epsilon(1e-12));
        }
        CHECK_THROWS_AS(Objective({ObjectiveKind::mode_density}), ConfigError);
    }

    TEST_CASE("coordinate sum") {
        BudgetMeter meter;
        CHECK(Objective({ObjectiveKind::coordinate_sum}).evaluate(vec({1.0, 2.0, 3.0}), meter) == 6.0);
        ObjectiveSpec spec{ObjectiveKind::coordinate_sum};
        spec.coefficients = vec({1.0, -1.0});
        CHECK(Objective(spec).evaluate(vec({5.0, 2.0}), meter) == 3.0);
    }

    TEST_CASE("noisy objectives are deterministic per seed and tick") {
        ObjectiveSpec spec{ObjectiveKind::noisy_target_distance, vec({0.0})};
        spec.noise_std = 0.5;
        spec.noise_seed = 42;
        const Objective objective(spec);
        BudgetMeter a, b;
        std::vector<double> first, second;
        for (int i = 0; i < 5; ++i) first.push_back(objective.evaluate(vec({1.0}), a));
        for (int i = 0; i < 5; ++i) second.push_back(objective.evaluate(vec({1.0}), b));
        CHECK(first == second);
        CHECK(first[0] != first[1]);
        spec.noise_std = 0.0;
        CHECK_THROWS_AS(Objective{spec}, ConfigError);
    }

    TEST_CASE("the meter enforces its limit") {
        BudgetMeter meter(2);
        const Objective objective({ObjectiveKind::coordinate_sum});
        (void)objective.evaluate(vec({1.0}), meter);
        (void)objective.evaluate(vec({1.0}), meter);
        CHECK(meter.remaining() == 0);
        CHECK_THROWS_AS(objective.evaluate(vec({1.0}), meter), BudgetExceeded);
        CHECK(meter.spent() == 2);
    }

    TEST_CASE("the meter counts concurrent charges exactly") {
        BudgetMeter meter(40000);
        std::vector<std::jthread> workers;
        for (int w = 0; w < 4; ++w) {
            workers.emplace_back([&] {
                for (int i = 0; i < 10000; ++i) (void)meter.charge();
            });
        }
        workers.clear();
        CHECK(meter.spent() == 40000);
        CHECK_THROWS_AS(meter.charge(), BudgetExceeded);
    }

    TEST_CASE("objective kinds round-trip through their names") {
        for (auto kind : {ObjectiveKind::target_distance, ObjectiveKind::quantized_rating, ObjectiveKind::mode_density,
                          ObjectiveKind::coordinate_sum, ObjectiveKind::noisy_target_distance}) {
            CHECK(objective_kind_from_string(to_string(kind)) == kind);
        }
        CHECK_THROWS_AS(objective_kind_from_string("vina"), ConfigError);
    }

    TEST_CASE("trace accumulates the running best") {
        RunTrace trace;
        trace.add_batch(1, std::vector<double>{3.0, 1.0});
        trace.add_batch(2, std::vector<double>{2.0, 4.0});
        trace.add_batch(3, std::vector<double>{0.5});
        REQUIRE(trace.rows().size() == 3);
        CHECK(trace.rows()[0].mean_objective == 2.0);
        CHECK(trace.rows()[1].accumulated_best == 1.0);
        CHECK(trace.rows()[2].accumulated_best == 0.5);
        CHECK(trace.rows()[2].queries_spent == 5);
        std::stringstream text;
        trace.write_csv(text);
        const auto back = RunTrace::read_csv(text);
        CHECK(back.rows().size() == 3);
        CHECK(back.accumulated_best() == 0.5);
        std::stringstream bad("batch_index,queries_spent,mean_objective,best_objective,accumulated_best,wall_seconds\n"
                              "1,4,1,1,1,0\n2,4,1,1,1,0\n");
        CHECK_THROWS(RunTrace::read_csv(bad));
        std::stringstream rising("batch_index,queries_spent,mean_objective,best_objective,accumulated_best,wall_seconds\n"
                                 "1,4,1,1,1,0\n2,8,1,2,2,0\n");
        CHECK_THROWS(RunTrace::read_csv(rising));
    }
}
