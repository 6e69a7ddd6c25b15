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

#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace hqlr {

/// Broad failure category; the CLI maps each to its own exit code.
enum class ErrorCategory {
  kConfig,
  kData,
  kSimulation,
  kArgument,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCategory category, const std::string& message)
      : std::runtime_error(message), category_(category) {}

  ErrorCategory category() const noexcept { return category_; }

 private:
  ErrorCategory category_;
};

/// Bad parameter passed to a library call (negative chi, wrong dimensions, ...).
class ArgumentError : public Error {
 public:
  explicit ArgumentError(const std::string& message)
      : Error(ErrorCategory::kArgument, message) {}
};

enum class DataErrorKind {
  kMissingFile,
  kNoDataRows,
  kNonNumeric,
  kNonFinite,
  kMissingTarget,
  kRaggedRow,
  kDimensionMismatch,
};

/// Dataset ingestion failure. Row numbers count data rows from 1 (the
/// header is not a data row).
class DataError : public Error {
 public:
  DataError(DataErrorKind kind, const std::string& message,
            std::optional<std::size_t> row = std::nullopt,
            std::optional<std::string> column = std::nullopt)
      : Error(ErrorCategory::kData, message),
        kind_(kind),
        row_(row),
        column_(std::move(column)) {}

  DataErrorKind kind() const noexcept { return kind_; }
  const std::optional<std::size_t>& row() const noexcept { return row_; }
  const std::optional<std::string>& column() const noexcept { return column_; }

 private:
  DataErrorKind kind_;
  std::optional<std::size_t> row_;
  std::optional<std::string> column_;
};

/// Numerical or physical failure inside a simulation stage. `stage` names the
/// pipeline step that raised it when known.
class SimulationError : public Error {
 public:
  explicit SimulationError(const std::string& message, std::string stage = {})
      : Error(ErrorCategory::kSimulation, stage.empty() ? message : stage + ": " + message),
        stage_(std::move(stage)) {}

  const std::string& stage() const noexcept { return stage_; }

 private:
  std::string stage_;
};

class ConfigError : public Error {
 public:
  ConfigError(const std::string& field, const std::string& message)
      : Error(ErrorCategory::kConfig, "config field '" + field + "': " + message),
        field_(field) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

}  // namespace hqlr
