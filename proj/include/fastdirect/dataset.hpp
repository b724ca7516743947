// Copyright 2026 The fastdirect Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <iosfwd>
#include <vector>

#include "fastdirect/types.hpp"

namespace fastdirect {

struct QueryRecord {
    Vector x;
    double y = 0.0;
    int batch_index = 0;
};

/**
 * Append-only set of queried points (x_K, y). query_count tracks every
 * objective evaluation ever recorded and never decreases.
 *
 * CSV layout: record_index,x0,...,x{d-1},y,batch_index
 */
class QueryDataset {
public:
    QueryDataset() = default;

    void append(Vector x, double y, int batch_index);

    bool empty() const { return records_.empty(); }
    std::size_t size() const { return records_.size(); }
    std::size_t query_count() const { return query_count_; }
    Eigen::Index dim() const { return dim_; }
    const std::vector<QueryRecord>& records() const { return records_; }
    const QueryRecord& operator[](std::size_t i) const { return records_.at(i); }

    /// First n records as a fresh dataset.
    QueryDataset prefix(std::size_t n) const;

    void write_csv(std::ostream& out) const;
    void write_csv(const std::filesystem::path& path) const;
    static QueryDataset read_csv(std::istream& in);
    static QueryDataset read_csv(const std::filesystem::path& path);

private:
    std::vector<QueryRecord> records_;
    std::size_t query_count_ = 0;
    Eigen::Index dim_ = 0;
};

}  // namespace fastdirect
