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

#include "nmloc/coherent.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <string>

#include "nmloc/error.hpp"

namespace nmloc {

namespace {
constexpr double kAngleSlack = 1e-12;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}  // namespace

void CoherentSpec::validate() const {
  if (!(theta >= -kAngleSlack && theta <= std::numbers::pi + kAngleSlack)) {
    throw ConfigError("theta must lie in [0, pi], got " + std::to_string(theta));
  }
  if (!(phi >= -kAngleSlack && phi < kTwoPi + kAngleSlack)) {
    throw ConfigError("phi must lie in [0, 2 pi), got " + std::to_string(phi));
  }
}

Hemisphere hemisphere_of(double theta) {
  return theta <= std::numbers::pi / 2 ? Hemisphere::North : Hemisphere::South;
}

char to_char(Hemisphere h) { return h == Hemisphere::North ? 'N' : 'S'; }

ComplexVector build_coherent_state(const CoherentSpec& spec, int n_qubits) {
  spec.validate();
  if (n_qubits < 1 || n_qubits > 30) throw DimensionError("build_coherent_state: bad qubit count");
  const double c = std::cos(spec.theta / 2);
  const Complex s = std::polar(std::sin(spec.theta / 2), spec.phi);
  // Amplitude depends only on the Hamming weight.
  std::vector<Complex> by_weight(n_qubits + 1);
  for (int w = 0; w <= n_qubits; ++w) {
    by_weight[w] = std::pow(c, n_qubits - w) * std::pow(s, w);
  }
  const std::size_t dim = std::size_t{1} << n_qubits;
  ComplexVector psi(static_cast<Eigen::Index>(dim));
  for (std::size_t b = 0; b < dim; ++b) {
    psi(static_cast<Eigen::Index>(b)) = by_weight[std::popcount(b)];
  }
  return psi;
}

Complex coherent_overlap(const CoherentSpec& a, const CoherentSpec& b, int n_qubits) {
  const double ca = std::cos(a.theta / 2), sa = std::sin(a.theta / 2);
  const double cb = std::cos(b.theta / 2), sb = std::sin(b.theta / 2);
  const Complex single = ca * cb + sa * sb * std::polar(1.0, b.phi - a.phi);
  return std::pow(single, n_qubits);
}

namespace {

std::vector<double> axis(double lo, double hi, double step, bool periodic, const char* name) {
  if (!(step > 0.0)) throw ConfigError(std::string(name) + "_step must be positive");
  if (!(hi >= lo)) throw ConfigError(std::string("empty ") + name + " range");
  const double slack = 1e-9 * step;
  std::vector<double> values;
  for (long i = 0;; ++i) {
    const double v = lo + static_cast<double>(i) * step;
    if (v > hi + slack) break;
    if (periodic && i > 0 && v >= lo + kTwoPi - slack) break;
    values.push_back(v);
  }
  return values;
}

}  // namespace

std::vector<GridPoint> enumerate_grid(const SphereGrid& grid) {
  const auto thetas = axis(grid.theta_min, grid.theta_max, grid.theta_step, false, "theta");
  const auto phis = axis(grid.phi_min, grid.phi_max, grid.phi_step, true, "phi");
  std::vector<GridPoint> points;
  points.reserve(thetas.size() * phis.size());
  for (double t : thetas) {
    for (double p : phis) {
      CoherentSpec spec{t, p};
      spec.validate();
      points.push_back(GridPoint{spec, hemisphere_of(t)});
    }
  }
  return points;
}

}  // namespace nmloc
