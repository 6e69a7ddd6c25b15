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
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <thread>

#include <fmt/format.h>

#include "hqlr/cv/pipeline.hpp"
#include "hqlr/error.hpp"
#include "hqlr/harness/config.hpp"
#include "hqlr/harness/runner.hpp"
#include "hqlr/pipeline.hpp"

namespace hqlr::harness {

RunResult run(const SimConfig& cfg, const regress::Dataset& d, const regress::QueryPoint& q) {
  switch (cfg.mode) {
    case RunMode::kOracle:
      return run_oracle(d, q, cfg);
    case RunMode::kSpectral:
      return run_spectral_pipeline(d, q, cfg);
    case RunMode::kCircuitIdeal:
    case RunMode::kCircuitTrotter:
      return cv::run_circuit_pipeline(d, q, cfg);
  }
  throw ConfigError("mode", "unhandled mode");
}

SimConfig sweep_config(const SimConfig& base, const regress::Dataset& d, const std::string& param, double value) {
  if (!is_sweepable(param)) {
    throw ConfigError("param", fmt::format("'{}' is not a sweepable field", param));
  }
  SimConfig cfg = base;
  if (param == "eps_q") {
    if (!(value > 0.0)) throw ConfigError("eps_q", fmt::format("must be > 0, got {}", value));
    const auto model = regress::svd_decompose(regress::pad_to_pow2(d));
    const double lmax = model.singular_values(0);
    const double alpha = cfg.eta * (lmax * lmax + cfg.chi);
    cfg.infinite_squeezing = false;
    cfg.window_radius = std::sqrt(alpha * value);
    cfg.s = std::pow(alpha * alpha * value, -0.25);
  } else {
    set_field(cfg, param, fmt::format("{}", value));
  }
  cfg.validate();
  return cfg;
}

std::vector<SweepPoint> sweep(const SimConfig& base, const regress::Dataset& d, const regress::QueryPoint& q,
                              const std::string& param, const std::vector<double>& values, std::size_t workers) {
  if (values.empty()) throw ConfigError("values", "no sweep values given");
  std::vector<SimConfig> configs;
  configs.reserve(values.size());
  for (double v : values) configs.push_back(sweep_config(base, d, param, v));

  std::vector<SweepPoint> points(values.size());
  std::vector<std::exception_ptr> errors(values.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < values.size(); i = next++) {
      try {
        points[i] = SweepPoint{param, values[i], run(configs[i], d, q)};
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t n = std::clamp<std::size_t>(workers, 1, values.size());
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return points;
}

std::vector<double> parse_values(const std::string& text) {
  auto number = [](std::string_view s) {
    double v = 0.0;
    while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
    while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
      throw ConfigError("values", fmt::format("expected a number, got '{}'", s));
    }
    return v;
  };
  std::vector<double> out;
  if (text.find(':') != std::string::npos) {
    const auto a = text.find(':');
    const auto b = text.find(':', a + 1);
    if (b == std::string::npos) throw ConfigError("values", "range form is start:stop:count");
    const double lo = number(std::string_view(text).substr(0, a));
    const double hi = number(std::string_view(text).substr(a + 1, b - a - 1));
    const double count = number(std::string_view(text).substr(b + 1));
    if (!(lo > 0.0) || !(hi > 0.0) || count < 2 || count != std::floor(count)) {
      throw ConfigError("values", "log range needs positive bounds and an integer count >= 2");
    }
    const auto n = static_cast<std::size_t>(count);
    for (std::size_t k = 0; k < n; ++k) {
      out.push_back(lo * std::pow(hi / lo, static_cast<double>(k) / static_cast<double>(n - 1)));
    }
    return out;
  }
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const auto end = comma == std::string::npos ? text.size() : comma;
    out.push_back(number(std::string_view(text).substr(start, end - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace hqlr::harness
