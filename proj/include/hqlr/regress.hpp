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
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace hqlr::regress {

/// Training data: features is M x N (samples x features), targets has length M.
struct Dataset {
  Eigen::MatrixXd features;
  Eigen::VectorXd targets;
  std::vector<std::string> feature_names;
  std::string target_name = "y";
  /// For each row, the index of the originating file row, or nullopt for
  /// padding rows.
  std::vector<std::optional<std::size_t>> row_origin;

  std::size_t sample_count() const { return static_cast<std::size_t>(features.rows()); }
  std::size_t feature_count() const { return static_cast<std::size_t>(features.cols()); }
};

/// Features of a new datum to predict.
struct QueryPoint {
  Eigen::VectorXd values;
};

struct SvdModel {
  Eigen::VectorXd singular_values;  ///< descending, length min(M, N)
  Eigen::MatrixXd left_vectors;     ///< M x min(M, N), column i is u_i
  Eigen::MatrixXd right_vectors;    ///< N x min(M, N), column i is v_i
  double condition_number = 1.0;    ///< lambda_max^2 / lambda_min^2 over retained values
  double rank_tol = 1e-12;          ///< relative to lambda_max
  std::size_t rank = 0;

  std::size_t size() const { return static_cast<std::size_t>(singular_values.size()); }
  /// True when lambda_i lies above the numerical rank cutoff.
  bool retained(std::size_t i) const;
};

struct RidgeSolution {
  Eigen::VectorXd weights;
  double chi = 0.0;
};

struct Calibration {
  double scale = 1.0;
  std::size_t rows_used = 0;
};

inline constexpr double kDefaultRankTol = 1e-12;

/// Validates shapes and finiteness and fills in names and the row map.
Dataset make_dataset(Eigen::MatrixXd features, Eigen::VectorXd targets);

Dataset load_dataset(const std::filesystem::path& path, const std::string& target_column = "y");

/// Reads a query CSV: header naming the features, then exactly one data row.
/// A column named like the dataset target is ignored.
QueryPoint load_query(const std::filesystem::path& path, const Dataset& reference);

/// Rounds M and N up to powers of two with zero rows/columns.
Dataset pad_to_pow2(const Dataset& d);

/// Zero-pads a query to `feature_count` entries.
QueryPoint pad_query(const QueryPoint& q, std::size_t feature_count);

SvdModel svd_decompose(const Dataset& d, double rank_tol = kDefaultRankTol);
SvdModel svd_decompose(const Eigen::MatrixXd& a, double rank_tol = kDefaultRankTol);

/// Prediction through the singular-value form
/// sum_i lambda_i / (lambda_i^2 + chi) (u_i . y) (v_i . q). With chi == 0,
/// singular values at or below the rank cutoff are dropped (pseudoinverse).
double ridge_predict(const Dataset& d, const QueryPoint& q, double chi,
                     double rank_tol = kDefaultRankTol);
double ridge_predict(const SvdModel& m, const Eigen::VectorXd& targets, const QueryPoint& q,
                     double chi);

/// Weights via a direct solve of (A^T A + chi I) w = A^T y. Requires the
/// system to be nonsingular.
RidgeSolution ridge_solve(const Dataset& d, double chi);

/// Ridge weights through the SVD (handles rank deficiency at chi == 0).
RidgeSolution ridge_weights(const Dataset& d, double chi, double rank_tol = kDefaultRankTol);

/// c' = mean over usable rows of y_m / raw_m. Rows with |raw_m| <= tolerance
/// are skipped.
Calibration calibrate_scale(const Dataset& d, std::span<const double> raw_predictions,
                            double tolerance = 1e-12);

/// Frobenius norm of the feature matrix.
double frobenius_norm(const Dataset& d);

}  // namespace hqlr::regress
