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

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>

#include <Eigen/Dense>

#include "hqlr/regress.hpp"

namespace hqlr::testing {

inline std::string data_path(const std::string& name) { return std::string(HQLR_DATA_DIR) + "/" + name; }

inline regress::Dataset demo_dataset() { return regress::load_dataset(data_path("demo.csv")); }

inline regress::QueryPoint demo_query() { return regress::load_query(data_path("demo_query.csv"), demo_dataset()); }

inline Eigen::MatrixXd random_matrix(std::mt19937_64& rng, Eigen::Index rows, Eigen::Index cols) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = normal(rng);
  }
  return m;
}

inline Eigen::VectorXd random_vector(std::mt19937_64& rng, Eigen::Index n) { return random_matrix(rng, n, 1); }

/// Writes `text` to a fresh file under the system temp directory.
inline std::string temp_file(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / ("hqlr_test_" + name);
  std::ofstream(path) << text;
  return path.string();
}

}  // namespace hqlr::testing
