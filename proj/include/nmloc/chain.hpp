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

// Kicked Ising chain on N qubits with periodic boundary. One period is
//
//   U = exp(-i sum_i (bx_i X_i + bz_i Z_i)) exp(-i sum_i J_i Z_i Z_{i+1})
//
// applied right to left (Ising phase first, then the kick). Basis index b
// stores qubit i in bit i, and Z_i has eigenvalue s_i = 1 - 2 bit_i.

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "nmloc/numerics.hpp"

namespace nmloc {

/// Dense paths (GUE coupling, assembled matrices) stop at 12 qubits.
inline constexpr std::size_t kMaxDenseDim = 4096;

enum class Coupling { VJ, V01, VB, V0, VGUE };

std::string_view to_string(Coupling c);
Coupling parse_coupling(std::string_view name);
/// VJ and VB keep the cyclic-shift symmetry of the bare chain.
bool is_translation_symmetric(Coupling c);

struct ChainParams {
  int n_qubits = 10;
  double b_perp = 1.4;
  double b_par = 1.4;
  double epsilon = 0.1;
  Coupling coupling = Coupling::VJ;
  std::optional<std::uint64_t> gue_seed;

  void validate() const;
};

struct KickField {
  double bx = 0.0;
  double bz = 0.0;
};

/// One period of the chain in factored form. Immutable; safe to share across threads.
class FloquetOperator {
 public:
  /// Structured form: per-qubit kick fields and per-bond Ising strengths
  /// (bond i couples qubits i and i+1 mod N).
  FloquetOperator(int n_qubits, std::vector<KickField> kicks, std::vector<double> bonds);
  /// Dense form: `between_kicks` replaces the Ising phase and must be unitary.
  FloquetOperator(int n_qubits, std::vector<KickField> kicks, ComplexMatrix between_kicks);

  int n_qubits() const { return n_qubits_; }
  std::size_t dim() const { return std::size_t{1} << n_qubits_; }
  std::span<const KickField> kick_fields() const { return kicks_; }
  std::span<const double> bond_strengths() const { return bonds_; }
  const std::optional<ComplexMatrix>& dense_factor() const { return dense_; }

  /// state <- U state, in place.
  void apply_in_place(ComplexVector& state) const;

  /// Same kick fields, bonds and dense factor.
  bool same_as(const FloquetOperator& other) const;

 private:
  void build_kick_gates();

  int n_qubits_;
  std::vector<KickField> kicks_;
  std::vector<double> bonds_;
  std::optional<ComplexMatrix> dense_;
  // exp(-i sum_i J_i s_i s_{i+1}) per basis index; empty in the dense form.
  std::vector<Complex> ising_phase_;
  // Row-major 2x2 kick gate per qubit.
  std::vector<std::array<Complex, 4>> gates_;
};

/// The two one-period propagators of the echo: U+ for H_env + eps V and U- for H_env - eps V.
struct FloquetPair {
  FloquetOperator plus;
  FloquetOperator minus;
  ChainParams params;

  /// plus and minus are identical (eps = 0), so the echo is the identity.
  bool trivial() const { return plus.same_as(minus); }
};

/// Diagonal of sum_i J_i Z_i Z_{i+1} in the computational basis.
Eigen::VectorXd ising_energies(int n_qubits, std::span<const double> bonds);

/// Builds U+ and U-. The stream is only consumed for the GUE coupling.
FloquetPair build_floquet_pair(const ChainParams& params, RngStream& rng);
/// Same, drawing the GUE matrix from stream 0 of params.gue_seed.
FloquetPair build_floquet_pair(const ChainParams& params);

/// The bare chain (eps = 0), shared midpoint of U+ and U-.
FloquetOperator build_unperturbed(const ChainParams& params);

ComplexVector apply_floquet(const FloquetOperator& op, const ComplexVector& state);

/// Dense matrix of the operator; column j is apply_floquet(op, e_j).
ComplexMatrix assemble_dense(const FloquetOperator& op);

}  // namespace nmloc
