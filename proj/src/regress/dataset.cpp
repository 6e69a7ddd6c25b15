// Copyright 2026 The HQLR Authors
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

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <string_view>

#include <fmt/format.h>

#include "hqlr/error.hpp"
#include "hqlr/regress.hpp"

namespace hqlr::regress {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string> split_line(std::string_view line) {
  std::vector<std::string> cells;
  std::size_t start = 0;
  while (true) {
    auto comma = line.find(',', start);
    auto cell = trim(line.substr(start, comma == std::string_view::npos ? line.npos : comma - start));
    if (cell.size() >= 2 && cell.front() == '"' && cell.back() == '"') {
      cell = cell.substr(1, cell.size() - 2);
    }
    cells.emplace_back(cell);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return cells;
}

bool blank(std::string_view line) { return trim(line).empty(); }

std::optional<double> parse_number(std::string_view cell) {
  if (cell.empty()) return std::nullopt;
  if (cell.front() == '+') cell.remove_prefix(1);
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
  if (ec != std::errc() || ptr != cell.data() + cell.size()) return std::nullopt;
  return value;
}

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

Table read_table(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw DataError(DataErrorKind::kMissingFile, fmt::format("cannot open '{}'", path.string()));
  }
  Table table;
  std::string line;
  bool have_header = false;
  std::size_t data_row = 0;
  while (std::getline(in, line)) {
    if (blank(line)) continue;
    if (!have_header) {
      table.header = split_line(line);
      have_header = true;
      continue;
    }
    ++data_row;
    auto cells = split_line(line);
    if (cells.size() != table.header.size()) {
      throw DataError(DataErrorKind::kRaggedRow,
                      fmt::format("{}: row {} has {} cells, header has {}", path.string(),
                                  data_row, cells.size(), table.header.size()),
                      data_row);
    }
    std::vector<double> values;
    values.reserve(cells.size());
    for (std::size_t c = 0; c < cells.size(); ++c) {
      auto v = parse_number(cells[c]);
      if (!v) {
        throw DataError(DataErrorKind::kNonNumeric,
                        fmt::format("{}: row {}, column '{}': cannot parse '{}' as a number",
                                    path.string(), data_row, table.header[c], cells[c]),
                        data_row, table.header[c]);
      }
      if (!std::isfinite(*v)) {
        throw DataError(DataErrorKind::kNonFinite,
                        fmt::format("{}: row {}, column '{}': non-finite value", path.string(),
                                    data_row, table.header[c]),
                        data_row, table.header[c]);
      }
      values.push_back(*v);
    }
    table.rows.push_back(std::move(values));
  }
  if (table.rows.empty()) {
    throw DataError(DataErrorKind::kNoDataRows, fmt::format("{}: no data rows", path.string()));
  }
  return table;
}

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

}  // namespace

Dataset make_dataset(Eigen::MatrixXd features, Eigen::VectorXd targets) {
  if (features.rows() < 1 || features.cols() < 1) {
    throw DataError(DataErrorKind::kNoDataRows, "dataset needs at least one row and one feature");
  }
  if (targets.size() != features.rows()) {
    throw DataError(DataErrorKind::kDimensionMismatch,
                    fmt::format("{} targets for {} rows", targets.size(), features.rows()));
  }
  if (!features.allFinite() || !targets.allFinite()) {
    throw DataError(DataErrorKind::kNonFinite, "dataset contains non-finite values");
  }
  Dataset d;
  d.features = std::move(features);
  d.targets = std::move(targets);
  for (Eigen::Index n = 0; n < d.features.cols(); ++n) d.feature_names.push_back(fmt::format("a{}", n));
  for (std::size_t m = 0; m < d.sample_count(); ++m) d.row_origin.emplace_back(m);
  return d;
}

Dataset load_dataset(const std::filesystem::path& path, const std::string& target_column) {
  Table table = read_table(path);
  auto it = std::find(table.header.begin(), table.header.end(), target_column);
  if (it == table.header.end()) {
    throw DataError(DataErrorKind::kMissingTarget,
                    fmt::format("{}: no target column '{}'", path.string(), target_column),
                    std::nullopt, target_column);
  }
  const auto target_index = static_cast<std::size_t>(it - table.header.begin());
  const auto m = table.rows.size();
  const auto n = table.header.size() - 1;
  if (n == 0) {
    throw DataError(DataErrorKind::kDimensionMismatch,
                    fmt::format("{}: no feature columns besides '{}'", path.string(), target_column));
  }
  Dataset d;
  d.features.resize(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(n));
  d.targets.resize(static_cast<Eigen::Index>(m));
  d.target_name = target_column;
  for (std::size_t c = 0; c < table.header.size(); ++c) {
    if (c != target_index) d.feature_names.push_back(table.header[c]);
  }
  for (std::size_t r = 0; r < m; ++r) {
    Eigen::Index col = 0;
    for (std::size_t c = 0; c < table.header.size(); ++c) {
      if (c == target_index) {
        d.targets(static_cast<Eigen::Index>(r)) = table.rows[r][c];
      } else {
        d.features(static_cast<Eigen::Index>(r), col++) = table.rows[r][c];
      }
    }
    d.row_origin.emplace_back(r);
  }
  return d;
}

QueryPoint load_query(const std::filesystem::path& path, const Dataset& reference) {
  Table table = read_table(path);
  if (table.rows.size() != 1) {
    throw DataError(DataErrorKind::kDimensionMismatch,
                    fmt::format("{}: query file must hold exactly one data row, found {}",
                                path.string(), table.rows.size()));
  }
  QueryPoint q;
  std::vector<double> values;
  for (std::size_t c = 0; c < table.header.size(); ++c) {
    if (table.header[c] == reference.target_name) continue;
    values.push_back(table.rows[0][c]);
  }
  if (values.size() != reference.feature_names.size()) {
    throw DataError(DataErrorKind::kDimensionMismatch,
                    fmt::format("{}: query has {} features, dataset has {}", path.string(),
                                values.size(), reference.feature_names.size()));
  }
  q.values = Eigen::Map<Eigen::VectorXd>(values.data(), static_cast<Eigen::Index>(values.size()));
  return q;
}

Dataset pad_to_pow2(const Dataset& d) {
  const auto m = next_pow2(d.sample_count());
  const auto n = next_pow2(d.feature_count());
  Dataset out = d;
  out.features = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(n));
  out.features.topLeftCorner(d.features.rows(), d.features.cols()) = d.features;
  out.targets = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(m));
  out.targets.head(d.targets.size()) = d.targets;
  for (auto k = d.feature_count(); k < n; ++k) out.feature_names.push_back(fmt::format("pad{}", k));
  out.row_origin.resize(m, std::nullopt);
  return out;
}

QueryPoint pad_query(const QueryPoint& q, std::size_t feature_count) {
  if (static_cast<std::size_t>(q.values.size()) > feature_count) {
    throw DataError(DataErrorKind::kDimensionMismatch,
                    fmt::format("query has {} features, cannot pad to {}", q.values.size(),
                                feature_count));
  }
  QueryPoint out;
  out.values = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(feature_count));
  out.values.head(q.values.size()) = q.values;
  return out;
}

double frobenius_norm(const Dataset& d) { return d.features.norm(); }

}  // namespace hqlr::regress
