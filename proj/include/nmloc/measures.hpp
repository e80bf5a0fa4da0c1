// Copyright 2026 The nmloc Authors
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

// Non-Markovianity measures of the dephasing channel. Everything depends on
// F(t) = |f(t)| only; derivatives become forward differences on kick times.
//
//   blp     sum_t max(0, F(t+1) - F(t))
//   rhp     sum_t max(0, log F(t+1) - log F(t))
//   n_max   max_{tau <= t_f} [K(t_f) - K(tau)]
//   n_avg   max(0, max_{t_f} [K(t_f) - mean_{tau < t_f} K(tau)])
//
// with indicator K either D(t) = F(t) or G(t), the accumulated log rises.

#include <span>
#include <vector>

#include "nmloc/dynamics.hpp"

namespace nmloc {

/// F is clamped to this value before taking logs.
inline constexpr double kLogFloor = 1e-12;

enum class IndicatorKind { D, G };

struct IndicatorSeries {
  IndicatorKind kind = IndicatorKind::D;
  std::vector<double> values;
  /// Samples of F that hit kLogFloor (G only).
  int clamp_events = 0;
};

IndicatorSeries indicator_D(std::span<const double> amplitudes);
IndicatorSeries indicator_D(const FidelitySeries& series);
IndicatorSeries indicator_G(std::span<const double> amplitudes);
IndicatorSeries indicator_G(const FidelitySeries& series);

double blp(std::span<const double> amplitudes);
double blp(const FidelitySeries& series);
double rhp(std::span<const double> amplitudes);
double rhp(const FidelitySeries& series);

double n_max(const IndicatorSeries& indicator);
double n_avg(const IndicatorSeries& indicator);

struct NmReport {
  double blp = 0.0;
  double rhp = 0.0;
  double nd_max = 0.0;
  double nd_avg = 0.0;
  double ng_max = 0.0;
  double ng_avg = 0.0;
  int t_cut = 0;
  bool normalized_by_tcut = false;
  int clamp_events = 0;
};

/// All six measures. With `normalize`, blp and rhp are divided by t_cut; the
/// max/average schemes saturate and are left alone.
NmReport compute_report(std::span<const double> amplitudes, bool normalize);
NmReport compute_report(const FidelitySeries& series, bool normalize);

}  // namespace nmloc
