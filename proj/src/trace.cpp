// Copyright 2026 The fastdirect Authors
// SPDX-License-Identifier: Apache-2.0

#include "fastdirect/trace.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "fastdirect/csv.hpp"

namespace fastdirect {

namespace {
constexpr const char* kHeader = "batch_index,queries_spent,mean_objective,best_objective,accumulated_best,wall_seconds";
}

void RunTrace::add_batch(int batch_index, std::span<const double> values, double wall_seconds) {
    if (values.empty()) throw std::invalid_argument("trace: empty batch");
    TraceRow row;
    row.batch_index = batch_index;
    row.queries_spent = queries_spent() + values.size();
    row.mean_objective = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
    row.best_objective = *std::min_element(values.begin(), values.end());
    row.accumulated_best = rows_.empty() ? row.best_objective : std::min(rows_.back().accumulated_best, row.best_objective);
    row.wall_seconds = wall_seconds;
    rows_.push_back(row);
}

double RunTrace::accumulated_best() const {
    return rows_.empty() ? std::numeric_limits<double>::infinity() : rows_.back().accumulated_best;
}

void RunTrace::write_csv(std::ostream& out) const {
    out << kHeader << '\n';
    for (const auto& r : rows_) {
        out << r.batch_index << ',' << r.queries_spent << ',' << csv::format_number(r.mean_objective) << ','
            << csv::format_number(r.best_objective) << ',' << csv::format_number(r.accumulated_best) << ','
            << csv::format_number(r.wall_seconds) << '\n';
    }
}

void RunTrace::write_csv(const std::filesystem::path& path) const {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("trace: cannot write " + path.string());
    write_csv(out);
}

RunTrace RunTrace::read_csv(std::istream& in) {
    std::vector<std::string> fields;
    if (!csv::next_row(in, fields)) throw std::runtime_error("trace: empty file");
    std::string header;
    for (std::size_t i = 0; i < fields.size(); ++i) header += (i ? "," : "") + fields[i];
    if (header != kHeader) throw std::runtime_error("trace: unexpected header '" + header + "'");
    RunTrace trace;
    while (csv::next_row(in, fields)) {
        if (fields.size() != 6) throw std::runtime_error("trace: expected 6 fields per row");
        TraceRow r;
        r.batch_index = std::stoi(fields[0]);
        r.queries_spent = std::stoul(fields[1]);
        r.mean_objective = csv::parse_number(fields[2]);
        r.best_objective = csv::parse_number(fields[3]);
        r.accumulated_best = csv::parse_number(fields[4]);
        r.wall_seconds = csv::parse_number(fields[5]);
        if (!trace.rows_.empty()) {
            if (r.queries_spent <= trace.rows_.back().queries_spent) {
                throw std::runtime_error("trace: queries_spent must be strictly increasing");
            }
            if (r.accumulated_best > trace.rows_.back().accumulated_best) {
                throw std::runtime_error("trace: accumulated_best must be nonincreasing");
            }
        }
        trace.rows_.push_back(r);
    }
    return trace;
}

RunTrace RunTrace::read_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("trace: cannot read " + path.string());
    return read_csv(in);
}

}  // namespace fastdirect
