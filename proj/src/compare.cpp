// Copyright 2026 The fastdirect Authors
// SPDX-License-Identifier: Apache-2.0

#include "fastdirect/compare.hpp"

#include <fstream>
#include <stdexcept>

#include "fastdirect/csv.hpp"
#include "fastdirect/types.hpp"

namespace fastdirect {

namespace {

double position(const TraceRow& row, BudgetAxis axis) {
    return axis == BudgetAxis::batches ? static_cast<double>(row.batch_index) : static_cast<double>(row.queries_spent);
}

}  // namespace

std::string to_string(BudgetAxis axis) { return axis == BudgetAxis::batches ? "batches" : "queries"; }

BudgetAxis budget_axis_from_string(const std::string& name) {
    if (name == "batches") return BudgetAxis::batches;
    if (name == "queries") return BudgetAxis::queries;
    throw ConfigError("unknown budget axis '" + name + "' (expected batches or queries)");
}

Efficiency efficiency(const RunTrace& a, const RunTrace& b, BudgetAxis axis) {
    if (a.empty() || b.empty()) throw std::invalid_argument("compare: empty trace");
    const auto& ra = a.rows();
    const auto& rb = b.rows();
    if (position(ra.back(), axis) < position(rb.front(), axis) || position(rb.back(), axis) < position(ra.front(), axis)) {
        throw std::invalid_argument("compare: budget axes do not overlap");
    }

    const double reference = b.accumulated_best();
    Efficiency out;
    for (const auto& row : rb) {
        if (row.accumulated_best <= reference) {
            out.budget_b = position(row, axis);
            break;
        }
    }
    for (const auto& row : ra) {
        if (row.accumulated_best <= reference) {
            out.n_star = position(row, axis);
            break;
        }
    }
    if (out.n_star) out.gain = out.budget_b / *out.n_star;
    return out;
}

std::vector<ComparisonRow> compare(const std::vector<NamedTrace>& traces, BudgetAxis axis) {
    std::vector<ComparisonRow> rows;
    for (std::size_t i = 0; i < traces.size(); ++i) {
        for (std::size_t j = 0; j < traces.size(); ++j) {
            if (i == j) continue;
            rows.push_back({traces[i].name, traces[j].name, efficiency(traces[i].trace, traces[j].trace, axis)});
        }
    }
    return rows;
}

void write_report(std::ostream& out, const std::vector<ComparisonRow>& rows, BudgetAxis axis) {
    out << "method_a,method_b,axis,n_star,budget_b,gain\n";
    for (const auto& row : rows) {
        out << row.a << ',' << row.b << ',' << to_string(axis) << ','
            << (row.result.n_star ? csv::format_number(*row.result.n_star) : "") << ','
            << csv::format_number(row.result.budget_b) << ','
            << (row.result.gain ? csv::format_number(*row.result.gain) : "") << '\n';
    }
}

void write_report(const std::filesystem::path& path, const std::vector<ComparisonRow>& rows, BudgetAxis axis) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("compare: cannot write " + path.string());
    write_report(out, rows, axis);
}

}  // namespace fastdirect
