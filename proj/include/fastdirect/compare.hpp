// Copyright 2026 The fastdirect Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "fastdirect/trace.hpp"

namespace fastdirect {

/// Budget axis: batch index (batch queries) or cumulative objective evaluations.
enum class BudgetAxis { batches, queries };

std::string to_string(BudgetAxis axis);
BudgetAxis budget_axis_from_string(const std::string& name);

struct Efficiency {
    /// First budget at which B's accumulated_best reached its final value.
    double budget_b = 0.0;
    /// First budget at which A's accumulated_best is <= B's final value; nullopt if never.
    std::optional<double> n_star;
    /// budget_b / n_star; nullopt if A never gets there.
    std::optional<double> gain;
};

/// Efficiency of A over B. Throws std::invalid_argument on empty traces or non-overlapping axes.
Efficiency efficiency(const RunTrace& a, const RunTrace& b, BudgetAxis axis = BudgetAxis::batches);

struct NamedTrace {
    std::string name;
    RunTrace trace;
};

struct ComparisonRow {
    std::string a;
    std::string b;
    Efficiency result;
};

/// Every ordered pair (A, B) with A != B.
std::vector<ComparisonRow> compare(const std::vector<NamedTrace>& traces, BudgetAxis axis = BudgetAxis::batches);

/// CSV: method_a,method_b,axis,n_star,budget_b,gain (empty fields when A never matches B).
void write_report(std::ostream& out, const std::vector<ComparisonRow>& rows, BudgetAxis axis);
void write_report(const std::filesystem::path& path, const std::vector<ComparisonRow>& rows, BudgetAxis axis);

}  // namespace fastdirect
