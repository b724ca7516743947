// Copyright 2026 The fastdirect Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

namespace fastdirect {

struct TraceRow {
    int batch_index = 0;
    std::size_t queries_spent = 0;
    double mean_objective = 0.0;
    double best_objective = 0.0;
    double accumulated_best = 0.0;
    double wall_seconds = 0.0;
};

/**
 * One row per batch query. accumulated_best is the running minimum of
 * best_objective; queries_spent is cumulative.
 *
 * CSV: batch_index,queries_spent,mean_objective,best_objective,accumulated_best,wall_seconds
 */
class RunTrace {
public:
    /// Appends a batch of objective values evaluated in this batch.
    void add_batch(int batch_index, std::span<const double> values, double wall_seconds = 0.0);

    const std::vector<TraceRow>& rows() const { return rows_; }
    bool empty() const { return rows_.empty(); }
    std::size_t queries_spent() const { return rows_.empty() ? 0 : rows_.back().queries_spent; }
    double accumulated_best() const;

    bool complete() const { return complete_; }
    void mark_incomplete() { complete_ = false; }

    void write_csv(std::ostream& out) const;
    void write_csv(const std::filesystem::path& path) const;
    static RunTrace read_csv(std::istream& in);
    static RunTrace read_csv(const std::filesystem::path& path);

private:
    std::vector<TraceRow> rows_;
    bool complete_ = true;
};

}  // namespace fastdirect
