// Copyright 2026 The fastdirect Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <istream>
#include <string>
#include <vector>

namespace fastdirect::csv {

/// Shortest form that round-trips (17 significant digits).
std::string format_number(double value);

double parse_number(const std::string& field);

std::vector<std::string> split_line(const std::string& line);

/// Reads the next non-empty line; false at end of input.
bool next_row(std::istream& in, std::vector<std::string>& fields);

}  // namespace fastdirect::csv
