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

// Translation symmetry of the periodic chain and spectral analysis.
//
// The cyclic shift T moves qubit i to i+1 (mod N); on basis indices it is a
// left bit-rotation. Momentum sector k holds the T-eigenspace with eigenvalue
// exp(2 pi i k / N), spanned by
//
//   |r, k> = p^{-1/2} sum_{j<p} exp(-2 pi i k j / N) T^j |r>
//
// for every orbit representative r whose period p satisfies k p = 0 (mod N).

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

#include "nmloc/chain.hpp"
#include "nmloc/numerics.hpp"

namespace nmloc {

struct Orbit {
  std::uint64_t representative;  // smallest index in the orbit
  int period;
};

/// T on a basis index.
std::uint64_t cyclic_shift(std::uint64_t index, int n_qubits);
/// T on a full state vector.
ComplexVector translate(const ComplexVector& state, int n_qubits);

class SectorBasis {
 public:
  SectorBasis(int n_qubits, int k);

  int n_qubits() const { return n_qubits_; }
  int k() const { return k_; }
  std::size_t dim() const { return orbits_.size(); }
  std::span<const Orbit> orbits() const { return orbits_; }

  /// Sector coordinates <r, k | v> of a full-space vector.
  ComplexVector project(const ComplexVector& full) const;
  /// sum_a c_a |r_a, k> as a full-space vector.
  ComplexVector embed(const ComplexVector& coords) const;

 private:
  int n_qubits_;
  int k_;
  std::vector<Orbit> orbits_;
  // Per full-space index: slot of its orbit in this sector (-1 if absent) and
  // the shift j with T^j r = index.
  std::vector<std::int32_t> slot_;
  std::vector<std::uint8_t> shift_;
  // exp(-2 pi i k j / N) for j < N.
  std::vector<Complex> phase_;
};

SectorBasis build_sector(int n_qubits, int k);

/// Block <r_a, k| U |r_b, k>. Throws SymmetryViolation when the block is not
/// unitary within kUnitaryTol, i.e. U leaks out of the sector.
ComplexMatrix sector_matrix(const FloquetOperator& op, const SectorBasis& basis);

enum class IprBasis { SectorK0, Full };

struct IprResult {
  double value = 0.0;
  IprBasis basis_kind = IprBasis::SectorK0;
  bool degenerate = false;
};

/// sum_i |<v_i|state>|^4. `state` is expressed in the coordinates the
/// eigenvectors use (sector coordinates for SectorK0). Throws when more than
/// 1e-8 of the norm falls outside the span of the eigenvectors.
IprResult ipr(const ComplexVector& state, const EigenSystem& eig, IprBasis kind);

struct BrodyFit {
  double q = 0.0;
  double loglik = 0.0;
};

struct SpectralReport {
  std::vector<double> spacings;  // unfolded, mean 1 per sector
  std::vector<int> sectors_used;
  double brody_q = 0.0;
  double brody_loglik = 0.0;
  double ks_poisson = 0.0;
  double ks_wigner = 0.0;
  double ks_brody = 0.0;
  bool degenerate = false;  // some sector had coinciding eigenphases
};

/// Nearest-neighbour eigenphase spacings pooled over every sector except
/// k = 0 and k = N/2, with the wrap-around gap included and each sector
/// unfolded by dim/(2 pi). Also fits the Brody parameter and the KS distances.
SpectralReport spacing_statistics(const FloquetOperator& op, int n_qubits);

double poisson_cdf(double s);
/// Wigner surmise (pi/2) s exp(-pi s^2/4).
double wigner_cdf(double s);
double brody_pdf(double s, double q);
double brody_cdf(double s, double q);
/// Gamma((q+2)/(q+1))^(q+1)
double brody_alpha(double q);
double brody_loglik(std::span<const double> spacings, double q);

/// Maximum-likelihood Brody parameter on [0, 1.2] by golden-section search.
BrodyFit brody_fit(std::span<const double> spacings);

/// Kolmogorov-Smirnov distance between the sample and a model CDF.
double ks_distance(std::span<const double> sample, const std::function<double(double)>& cdf);

/// Normalized histogram (bin center, density) with bin width 0.1 over [0, 5].
std::vector<std::pair<double, double>> spacing_histogram(std::span<const double> spacings);
void write_histogram(std::ostream& out, std::span<const double> spacings);

}  // namespace nmloc
