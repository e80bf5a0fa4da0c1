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

// Echo dynamics of the dephasing qubit: fidelity amplitude
// f(t) = <psi| (U-^dag)^t (U+)^t |psi> on integer kick times, the induced
// qubit channel, and long-time fidelity averages.

#include <array>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include <Eigen/Dense>

#include "nmloc/chain.hpp"
#include "nmloc/coherent.hpp"

namespace nmloc {

struct FidelitySeries {
  /// f(0..t_cut); f(0) == 1 exactly.
  std::vector<Complex> f;
  std::uint64_t params_fingerprint = 0;

  int t_cut() const { return static_cast<int>(f.size()) - 1; }
  /// F(t) = |f(t)|.
  std::vector<double> amplitudes() const;
};

/// Stable 64-bit hash of the parameters that determine a series.
std::uint64_t fingerprint(const ChainParams& params, const CoherentSpec& spec);

/// Evolves (U+)^t psi and (U-)^t psi side by side, one kick per step.
FidelitySeries fidelity_series(const FloquetPair& pair, const ComplexVector& psi, int t_cut,
                               std::uint64_t params_fingerprint = 0);

/// Writes `t Re(f) Im(f)` per line with 12 significant digits.
void write_series(std::ostream& out, const FidelitySeries& series);

/// The qubit channel at one instant: coherences are multiplied by f.
struct ChannelSnapshot {
  Complex f_value;
};

/// Pauli transfer matrix E_jk = tr[s_j E(s_k)]/2 in the order (1, X, Y, Z).
/// The qubit state |1> drives the environment with U+ and |0> with U-, so
/// rho_10 -> f rho_10 and the X/Y block is [[Re f, -Im f], [Im f, Re f]].
Eigen::Matrix4d channel_matrix(const ChannelSnapshot& snapshot);

/// Normalized Choi matrix (trace 1) of the dephasing map with coherence
/// multiplier lambda on rho_10, in the |i>|j> ordering.
Eigen::Matrix4cd choi_matrix(Complex lambda);
/// The two nonzero Choi eigenvalues, (1 - |lambda|)/2 and (1 + |lambda|)/2.
std::array<double, 2> choi_eigenvalues(Complex lambda);
/// Trace norm of the normalized Choi matrix: max(1, |lambda|). Exceeds 1 iff
/// the map is not completely positive.
double choi_trace_norm(Complex lambda);

struct AsymptoticFidelity {
  double mean_F = 0.0;   // tail average of |f|
  double mean_F2 = 0.0;  // tail average of |f|^2
  int window_start = 0;
  int window_end = 0;
};

/// Averages over [t_cut - floor(tail_fraction * t_cut), t_cut]. The default
/// is the second half of the run.
AsymptoticFidelity asymptotic_fidelity(const FidelitySeries& series, double tail_fraction = 0.5);

}  // namespace nmloc
