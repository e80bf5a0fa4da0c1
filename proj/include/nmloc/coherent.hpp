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

// Spin coherent states |theta, phi> = (cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>)^{(x)N}
// and rectangular (theta, phi) grids over the sphere.

#include <vector>

#include "nmloc/numerics.hpp"

namespace nmloc {

struct CoherentSpec {
  double theta = 0.0;  // polar angle in [0, pi]
  double phi = 0.0;    // azimuth in [0, 2 pi)

  void validate() const;
};

enum class Hemisphere { North, South };

/// North for theta <= pi/2.
Hemisphere hemisphere_of(double theta);
char to_char(Hemisphere h);

struct GridPoint {
  CoherentSpec spec;
  Hemisphere hemisphere;
};

struct SphereGrid {
  double theta_min = 0.0;
  double theta_max = 3.141592653589793;
  double theta_step = 0.1;
  double phi_min = 0.0;
  double phi_max = 6.283185307179586;
  double phi_step = 0.1;
};

ComplexVector build_coherent_state(const CoherentSpec& spec, int n_qubits);

/// Closed-form <a|b> of two N-qubit coherent states.
Complex coherent_overlap(const CoherentSpec& a, const CoherentSpec& b, int n_qubits);

/// Theta-major, phi-minor enumeration. Values min + i*step are kept while they
/// do not exceed max (up to rounding); a phi value that closes the full circle
/// onto phi_min is dropped.
std::vector<GridPoint> enumerate_grid(const SphereGrid& grid);

}  // namespace nmloc
