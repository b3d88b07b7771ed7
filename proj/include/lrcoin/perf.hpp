// Copyright 2026 The LRCoin Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lrcoin/bilinear.hpp"

// Wall-clock timing of the signature algorithms as the number of signed
// messages grows.
namespace lrcoin::perf {

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  /// Coefficient of determination; 1 when y has no variance.
  double r2 = 0.0;
};

/// Ordinary least squares of y on x. Requires at least two points.
LinearFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

struct SweepRow {
  std::size_t n = 0;
  // Medians over the repetitions, in milliseconds.
  double setup_ms = 0.0;
  double keygen_ms = 0.0;
  double sign_total_ms = 0.0;
  double verify_total_ms = 0.0;
};

struct SweepReport {
  std::vector<SweepRow> rows;
  LinearFit sign_fit;
  LinearFit verify_fit;
  // Per-call means across the whole sweep.
  double setup_mean_ms = 0.0;
  double keygen_mean_ms = 0.0;
  double sign_mean_ms = 0.0;
  double verify_mean_ms = 0.0;
};

/// For n = 1..max_messages signs and verifies n distinct messages under a
/// fresh key, \p repetitions times, keeping the median of each total. Setup
/// rebuilds the parameters for \p backend. Throws std::invalid_argument if
/// either count is zero.
SweepReport sign_verify_sweep(bilinear::BackendId backend, std::size_t max_messages,
                              std::size_t repetitions, std::uint64_t seed);

/// Header plus one row per n, then the fit lines.
std::string sweep_csv(const SweepReport& r);

}  // namespace lrcoin::perf
