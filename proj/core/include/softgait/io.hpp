// Copyright 2026 The softgait Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace softgait {

// Shortest round-trip decimal representation, locale-free.
std::string format_double(double value);

// Fixed-point rendering used in report tables, e.g. format_fixed(0.6275, 3)
// -> "0.628".
std::string format_fixed(double value, int decimals);

// "mean±sd" with fixed decimals.
std::string format_pm(double mean, double sd, int decimals);

double parse_double(std::string_view text, const std::string& context);
std::vector<std::string> split_csv_line(const std::string& line);

uint64_t fnv1a64(std::string_view bytes);
uint64_t fnv1a64(uint64_t seed, std::string_view bytes);
std::string hex64(uint64_t value);
uint64_t hash_file(const std::filesystem::path& path);
std::string read_file(const std::filesystem::path& path);

// Generic numeric CSV: a fixed header line plus rows of doubles.
struct NumericTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  int column(const std::string& name) const;  // -1 when missing
  std::vector<double> extract(int col) const;
};

NumericTable read_numeric_csv(const std::filesystem::path& path);
void write_numeric_csv(const std::filesystem::path& path,
                       const std::vector<std::string>& columns,
                       const std::vector<std::vector<double>>& rows);

}  // namespace softgait
