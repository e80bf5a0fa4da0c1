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

// Dense complex linear algebra and random sampling shared by every other module.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace nmloc {

using Complex = std::complex<double>;
using ComplexVector = Eigen::VectorXcd;
using ComplexMatrix = Eigen::MatrixXcd;

/// Eigenphases in (-pi, pi] closer than this mark an EigenSystem as degenerate.
inline constexpr double kDegeneracyGap = 1e-10;
inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kUnitaryTol = 1e-9;

/// Eigenvalues (energies for Hermitian input, phases for unitary input) with
/// the matching orthonormal eigenvectors stored as columns.
struct EigenSystem {
  std::vector<double> values;
  ComplexMatrix vectors;
  /// Largest ||M v - lambda v|| over all pairs.
  double residual = 0.0;
  /// Two eigenvalues closer than kDegeneracyGap (only set for unitary input).
  bool degenerate = false;

  std::size_t dim() const { return values.size(); }
};

/// Deterministic random stream identified by (seed, stream_index). Each
/// concurrent task owns its own stream; streams are never shared.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream_index);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_index() const { return stream_index_; }

  double normal() { return normal_(engine_); }
  double uniform() { return uniform_(engine_); }
  std::mt19937_64& engine() { return engine_; }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_index_;
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

/// <a|b>, conjugating the first argument.
Complex inner_product(const ComplexVector& a, const ComplexVector& b);

/// max_ij |M_ij - conj(M_ji)|
double hermiticity_defect(const ComplexMatrix& m);
/// max_ij |(U^dag U - I)_ij|
double unitarity_defect(const ComplexMatrix& u);
/// max_ij |(V^dag V - I)_ij| over the columns of v.
double gram_defect(const ComplexMatrix& v);

/// Eigendecomposition of a Hermitian matrix; values ascending.
EigenSystem hermitian_eig(const ComplexMatrix& m);

/// Eigendecomposition of a unitary matrix. Phases lie in (-pi, pi] and are
/// sorted ascending, ties broken by the argument of the first nonzero
/// eigenvector component. Vectors come from the complex Schur form, which is
/// diagonal for normal input, so they are orthonormal even inside
/// near-degenerate clusters.
EigenSystem unitary_eig(const ComplexMatrix& u);

/// V diag(exp(i theta)) V^dag for an EigenSystem produced by unitary_eig.
ComplexMatrix reconstruct_unitary(const EigenSystem& eig);

/// exp(-i * scale * h) for Hermitian h, built from hermitian_eig.
ComplexMatrix hermitian_expm(const ComplexMatrix& h, double scale);

/// (A + A^dag)/2 with A_ij independent standard complex Gaussians
/// (E|A_ij|^2 = 1). No rescaling.
ComplexMatrix sample_gue_unscaled(std::size_t dim, RngStream& rng);

/// sample_gue_unscaled rescaled so that its spectral norm equals log2(dim),
/// i.e. the qubit count when dim = 2^N.
ComplexMatrix sample_gue(std::size_t dim, RngStream& rng);

/// Largest |eigenvalue| of a Hermitian matrix.
double hermitian_spectral_norm(const ComplexMatrix& h);

/// Wraps an angle into (-pi, pi].
double wrap_phase(double angle);

}  // namespace nmloc
