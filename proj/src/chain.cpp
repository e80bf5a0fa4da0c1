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

#include "nmloc/chain.hpp"

#include <cmath>
#include <string>

#include "nmloc/error.hpp"

namespace nmloc {

std::string_view to_string(Coupling c) {
  switch (c) {
    case Coupling::VJ: return "VJ";
    case Coupling::V01: return "V01";
    case Coupling::VB: return "VB";
    case Coupling::V0: return "V0";
    case Coupling::VGUE: return "VGUE";
  }
  return "?";
}

Coupling parse_coupling(std::string_view name) {
  if (name == "VJ") return Coupling::VJ;
  if (name == "V01") return Coupling::V01;
  if (name == "VB") return Coupling::VB;
  if (name == "V0") return Coupling::V0;
  if (name == "VGUE") return Coupling::VGUE;
  throw ConfigError("unknown coupling '" + std::string(name) + "' (expected VJ, V01, VB, V0, VGUE)");
}

bool is_translation_symmetric(Coupling c) { return c == Coupling::VJ || c == Coupling::VB; }

void ChainParams::validate() const {
  if (n_qubits < 2) throw ConfigError("n_qubits must be at least 2");
  if (n_qubits > 24) throw ConfigError("n_qubits above 24 is not supported");
  if (!(epsilon >= 0.0)) throw ConfigError("epsilon must be nonnegative");
  if (!std::isfinite(b_perp) || !std::isfinite(b_par)) throw ConfigError("fields must be finite");
  if (coupling == Coupling::VGUE && !gue_seed) throw ConfigError("VGUE coupling requires a seed");
}

namespace {

inline int spin(std::uint64_t b, int i) { return 1 - 2 * static_cast<int>((b >> i) & 1u); }

std::array<Complex, 4> kick_gate(const KickField& k) {
  // exp(-i (bx X + bz Z)) = cos(beta) I - i sin(beta) (bx X + bz Z) / beta
  const double beta = std::hypot(k.bx, k.bz);
  if (beta == 0.0) return {Complex(1.0), Complex(0.0), Complex(0.0), Complex(1.0)};
  const double c = std::cos(beta);
  const double s = std::sin(beta) / beta;
  const Complex i(0.0, 1.0);
  return {c - i * s * k.bz, -i * s * k.bx, -i * s * k.bx, c + i * s * k.bz};
}

}  // namespace

Eigen::VectorXd ising_energies(int n_qubits, std::span<const double> bonds) {
  if (static_cast<int>(bonds.size()) != n_qubits) {
    throw DimensionError("ising_energies: need one bond per qubit");
  }
  const std::size_t dim = std::size_t{1} << n_qubits;
  Eigen::VectorXd e(static_cast<Eigen::Index>(dim));
  for (std::size_t b = 0; b < dim; ++b) {
    double sum = 0.0;
    for (int i = 0; i < n_qubits; ++i) {
      sum += bonds[i] * spin(b, i) * spin(b, (i + 1) % n_qubits);
    }
    e(static_cast<Eigen::Index>(b)) = sum;
  }
  return e;
}

FloquetOperator::FloquetOperator(int n_qubits, std::vector<KickField> kicks,
                                 std::vector<double> bonds)
    : n_qubits_(n_qubits), kicks_(std::move(kicks)), bonds_(std::move(bonds)) {
  if (n_qubits_ < 1 || static_cast<int>(kicks_.size()) != n_qubits_ ||
      static_cast<int>(bonds_.size()) != n_qubits_) {
    throw DimensionError("FloquetOperator: need one kick field and one bond per qubit");
  }
  const Eigen::VectorXd e = ising_energies(n_qubits_, bonds_);
  ising_phase_.resize(e.size());
  for (Eigen::Index b = 0; b < e.size(); ++b) ising_phase_[b] = std::polar(1.0, -e(b));
  build_kick_gates();
}

FloquetOperator::FloquetOperator(int n_qubits, std::vector<KickField> kicks,
                                 ComplexMatrix between_kicks)
    : n_qubits_(n_qubits), kicks_(std::move(kicks)), dense_(std::move(between_kicks)) {
  if (n_qubits_ < 1 || static_cast<int>(kicks_.size()) != n_qubits_) {
    throw DimensionError("FloquetOperator: need one kick field per qubit");
  }
  if (static_cast<std::size_t>(dense_->rows()) != dim() || dense_->rows() != dense_->cols()) {
    throw DimensionError("FloquetOperator: dense factor must be 2^N x 2^N");
  }
  if (unitarity_defect(*dense_) > kUnitaryTol) {
    throw PreconditionError("FloquetOperator: dense factor is not unitary");
  }
  build_kick_gates();
}

void FloquetOperator::build_kick_gates() {
  gates_.reserve(kicks_.size());
  for (const auto& k : kicks_) gates_.push_back(kick_gate(k));
}

void FloquetOperator::apply_in_place(ComplexVector& state) const {
  const std::size_t n = dim();
  if (static_cast<std::size_t>(state.size()) != n) {
    throw DimensionError("apply_floquet: state has dimension " + std::to_string(state.size()) +
                         ", operator acts on " + std::to_string(n));
  }
  if (dense_) {
    state = (*dense_) * state;
  } else {
    Complex* v = state.data();
    for (std::size_t b = 0; b < n; ++b) v[b] *= ising_phase_[b];
  }
  Complex* v = state.data();
  for (int q = 0; q < n_qubits_; ++q) {
    const auto& g = gates_[q];
    const std::size_t stride = std::size_t{1} << q;
    for (std::size_t block = 0; block < n; block += 2 * stride) {
      for (std::size_t j = block; j < block + stride; ++j) {
        const Complex a0 = v[j];
        const Complex a1 = v[j + stride];
        v[j] = g[0] * a0 + g[1] * a1;
        v[j + stride] = g[2] * a0 + g[3] * a1;
      }
    }
  }
}

bool FloquetOperator::same_as(const FloquetOperator& other) const {
  if (n_qubits_ != other.n_qubits_ || bonds_ != other.bonds_) return false;
  for (std::size_t i = 0; i < kicks_.size(); ++i) {
    if (kicks_[i].bx != other.kicks_[i].bx || kicks_[i].bz != other.kicks_[i].bz) return false;
  }
  if (dense_.has_value() != other.dense_.has_value()) return false;
  return !dense_ || *dense_ == *other.dense_;
}

namespace {

FloquetOperator structured(const ChainParams& p, double sign) {
  const int n = p.n_qubits;
  std::vector<KickField> kicks(n, KickField{p.b_perp, p.b_par});
  std::vector<double> bonds(n, 1.0);
  const double d = sign * p.epsilon;
  switch (p.coupling) {
    case Coupling::VJ:
      for (auto& j : bonds) j += d;
      break;
    case Coupling::V01:
      bonds[0] += d;
      break;
    case Coupling::VB:
      for (auto& k : kicks) k.bx += d;
      break;
    case Coupling::V0:
      kicks[0].bx += d;
      break;
    case Coupling::VGUE:
      break;
  }
  return FloquetOperator(n, std::move(kicks), std::move(bonds));
}

}  // namespace

FloquetOperator build_unperturbed(const ChainParams& params) {
  params.validate();
  ChainParams bare = params;
  bare.epsilon = 0.0;
  bare.coupling = Coupling::VJ;
  return structured(bare, 0.0);
}

FloquetPair build_floquet_pair(const ChainParams& params, RngStream& rng) {
  params.validate();
  if (params.coupling != Coupling::VGUE) {
    return FloquetPair{structured(params, +1.0), structured(params, -1.0), params};
  }
  const std::size_t dim = std::size_t{1} << params.n_qubits;
  if (dim > kMaxDenseDim) {
    throw ConfigError("VGUE coupling needs a dense 2^N matrix; refusing N = " +
                      std::to_string(params.n_qubits) + " (limit 12)");
  }
  const int n = params.n_qubits;
  const std::vector<double> unit_bonds(n, 1.0);
  const ComplexMatrix v = sample_gue(dim, rng);
  ComplexMatrix h_ising = ComplexMatrix::Zero(v.rows(), v.cols());
  h_ising.diagonal() = ising_energies(n, unit_bonds).cast<Complex>();
  const std::vector<KickField> kicks(n, KickField{params.b_perp, params.b_par});
  // eps = 0 must give bitwise identical operators.
  if (params.epsilon == 0.0) {
    const ComplexMatrix u = hermitian_expm(h_ising, 1.0);
    return FloquetPair{FloquetOperator(n, kicks, u), FloquetOperator(n, kicks, u), params};
  }
  return FloquetPair{FloquetOperator(n, kicks, hermitian_expm(h_ising + params.epsilon * v, 1.0)),
                     FloquetOperator(n, kicks, hermitian_expm(h_ising - params.epsilon * v, 1.0)),
                     params};
}

FloquetPair build_floquet_pair(const ChainParams& params) {
  params.validate();
  RngStream rng(params.gue_seed.value_or(0), 0);
  return build_floquet_pair(params, rng);
}

ComplexVector apply_floquet(const FloquetOperator& op, const ComplexVector& state) {
  ComplexVector out = state;
  op.apply_in_place(out);
  return out;
}

ComplexMatrix assemble_dense(const FloquetOperator& op) {
  const std::size_t n = op.dim();
  if (n > kMaxDenseDim) {
    throw DimensionError("assemble_dense: dimension " + std::to_string(n) + " exceeds " +
                         std::to_string(kMaxDenseDim));
  }
  const auto dim = static_cast<Eigen::Index>(n);
  ComplexMatrix u(dim, dim);
  for (Eigen::Index j = 0; j < dim; ++j) {
    ComplexVector e = ComplexVector::Zero(dim);
    e(j) = 1.0;
    op.apply_in_place(e);
    u.col(j) = e;
  }
  return u;
}

}  // namespace nmloc
