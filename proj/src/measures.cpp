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

#include "nmloc/measures.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace nmloc {

namespace {

double floored_log(double x, int& clamps) {
  if (x < kLogFloor) {
    ++clamps;
    x = kLogFloor;
  }
  return std::log(x);
}

}  // namespace

IndicatorSeries indicator_D(std::span<const double> amplitudes) {
  return IndicatorSeries{IndicatorKind::D, {amplitudes.begin(), amplitudes.end()}, 0};
}

IndicatorSeries indicator_D(const FidelitySeries& series) {
  return indicator_D(series.amplitudes());
}

IndicatorSeries indicator_G(std::span<const double> amplitudes) {
  IndicatorSeries out{IndicatorKind::G, {}, 0};
  if (amplitudes.empty()) return out;
  out.values.resize(amplitudes.size());
  out.values[0] = 0.0;
  double prev = floored_log(amplitudes[0], out.clamp_events);
  for (std::size_t t = 1; t < amplitudes.size(); ++t) {
    const double cur = floored_log(amplitudes[t], out.clamp_events);
    out.values[t] = out.values[t - 1] + std::max(0.0, cur - prev);
    prev = cur;
  }
  return out;
}

IndicatorSeries indicator_G(const FidelitySeries& series) {
  return indicator_G(series.amplitudes());
}

double blp(std::span<const double> amplitudes) {
  double sum = 0.0;
  for (std::size_t t = 1; t < amplitudes.size(); ++t) {
    sum += std::max(0.0, amplitudes[t] - amplitudes[t - 1]);
  }
  return sum;
}

double blp(const FidelitySeries& series) { return blp(series.amplitudes()); }

double rhp(std::span<const double> amplitudes) {
  const IndicatorSeries g = indicator_G(amplitudes);
  return g.values.empty() ? 0.0 : g.values.back();
}

double rhp(const FidelitySeries& series) { return rhp(series.amplitudes()); }

double n_max(const IndicatorSeries& indicator) {
  double best = 0.0;
  double running_min = std::numeric_limits<double>::infinity();
  for (double k : indicator.values) {
    running_min = std::min(running_min, k);
    best = std::max(best, k - running_min);
  }
  return best;
}

double n_avg(const IndicatorSeries& indicator) {
  double best = 0.0;
  double prefix_sum = 0.0;
  const auto& v = indicator.values;
  for (std::size_t t = 1; t < v.size(); ++t) {
    prefix_sum += v[t - 1];
    best = std::max(best, v[t] - prefix_sum / static_cast<double>(t));
  }
  return best;
}

NmReport compute_report(std::span<const double> amplitudes, bool normalize) {
  NmReport r;
  r.t_cut = amplitudes.empty() ? 0 : static_cast<int>(amplitudes.size()) - 1;
  r.normalized_by_tcut = normalize;

  const IndicatorSeries d = indicator_D(amplitudes);
  const IndicatorSeries g = indicator_G(amplitudes);
  r.blp = blp(amplitudes);
  r.rhp = g.values.empty() ? 0.0 : g.values.back();
  r.nd_max = n_max(d);
  r.nd_avg = n_avg(d);
  r.ng_max = n_max(g);
  r.ng_avg = n_avg(g);
  r.clamp_events = g.clamp_events;
  if (normalize && r.t_cut > 0) {
    r.blp /= r.t_cut;
    r.rhp /= r.t_cut;
  }
  return r;
}

NmReport compute_report(const FidelitySeries& series, bool normalize) {
  return compute_report(series.amplitudes(), normalize);
}

}  // namespace nmloc
