// Copyright 2026 The fastdirect Authors
// SPDX-License-Identifier: Apache-2.0

#include "fastdirect/dataset.hpp"

#include <algorithm>
#include <fstream>
#include <stdexcept>

#include "fastdirect/csv.hpp"

namespace fastdirect {

void QueryDataset::append(Vector x, double y, int batch_index) {
    if (records_.empty() && dim_ == 0) dim_ = x.size();
    require_dim(x, dim_, "query dataset");
    records_.push_back({std::move(x), y, batch_index});
    ++query_count_;
}

QueryDataset QueryDataset::prefix(std::size_t n) const {
    QueryDataset out;
    for (std::size_t i = 0; i < std::min(n, records_.size()); ++i) {
        out.append(records_[i].x, records_[i].y, records_[i].batch_index);
    }
    return out;
}

void QueryDataset::write_csv(std::ostream& out) const {
    out << "record_index";
    for (Eigen::Index j = 0; j < dim_; ++j) out << ",x" << j;
    out << ",y,batch_index\n";
    for (std::size_t i = 0; i < records_.size(); ++i) {
        const auto& r = records_[i];
        out << i;
        for (Eigen::Index j = 0; j < r.x.size(); ++j) out << ',' << csv::format_number(r.x[j]);
        out << ',' << csv::format_number(r.y) << ',' << r.batch_index << '\n';
    }
}

void QueryDataset::write_csv(const std::filesystem::path& path) const {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("dataset: cannot write " + path.string());
    write_csv(out);
}

QueryDataset QueryDataset::read_csv(std::istream& in) {
    std::vector<std::string> fields;
    if (!csv::next_row(in, fields)) return {};
    if (fields.size() < 4 || fields.front() != "record_index" || fields[fields.size() - 2] != "y" ||
        fields.back() != "batch_index") {
        throw std::runtime_error("dataset: unexpected CSV header");
    }
    const auto dim = static_cast<Eigen::Index>(fields.size() - 3);
    QueryDataset out;
    std::size_t line = 1;
    while (csv::next_row(in, fields)) {
        ++line;
        if (fields.size() != static_cast<std::size_t>(dim) + 3) {
            throw std::runtime_error("dataset: wrong field count on line " + std::to_string(line));
        }
        if (std::stoul(fields[0]) != out.size()) {
            throw std::runtime_error("dataset: record_index out of sequence on line " + std::to_string(line));
        }
        Vector x(dim);
        for (Eigen::Index j = 0; j < dim; ++j) x[j] = csv::parse_number(fields[j + 1]);
        out.append(std::move(x), csv::parse_number(fields[dim + 1]), std::stoi(fields[dim + 2]));
    }
    return out;
}

QueryDataset QueryDataset::read_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("dataset: cannot read " + path.string());
    return read_csv(in);
}

}  // namespace fastdirect
