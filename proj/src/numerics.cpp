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

#include "nmloc/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include <Eigen/Eigenvalues>

#include "nmloc/error.hpp"

namespace nmloc {

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_index)
    : seed_(seed), stream_index_(stream_index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream_index),
                    static_cast<std::uint32_t>(stream_index >> 32)};
  engine_.seed(seq);
}

Complex inner_product(const ComplexVector& a, const ComplexVector& b) {
  if (a.size() != b.size()) {
    throw DimensionError("inner_product: dimension mismatch (" + std::to_string(a.size()) +
                         " vs " + std::to_string(b.size()) + ")");
  }
  return a.dot(b);  // Eigen conjugates the left operand
}

double hermiticity_defect(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) throw DimensionError("matrix is not square");
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

double unitarity_defect(const ComplexMatrix& u) {
  if (u.rows() != u.cols()) throw DimensionError("matrix is not square");
  return gram_defect(u);
}

double gram_defect(const ComplexMatrix& v) {
  const ComplexMatrix gram = v.adjoint() * v;
  return (gram - ComplexMatrix::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff();
}

double wrap_phase(double angle) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double a = std::remainder(angle, two_pi);
  if (a <= -std::numbers::pi) a += two_pi;
  return a;
}

EigenSystem hermitian_eig(const ComplexMatrix& m) {
  if (m.rows() == 0) throw DimensionError("hermitian_eig: empty matrix");
  const double defect = hermiticity_defect(m);
  if (defect > kHermitianTol) {
    throw PreconditionError("hermitian_eig: matrix is not Hermitian (defect " +
                            std::to_string(defect) + ")");
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m);
  if (solver.info() != Eigen::Success) throw Error("hermitian_eig: solver did not converge");

  EigenSystem out;
  const auto& evals = solver.eigenvalues();
  out.values.assign(evals.data(), evals.data() + evals.size());
  out.vectors = solver.eigenvectors();
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    const double r = (m * out.vectors.col(j) - evals(j) * out.vectors.col(j)).norm();
    out.residual = std::max(out.residual, r);
  }
  return out;
}

namespace {

double first_component_arg(const ComplexMatrix& v, Eigen::Index col) {
  for (Eigen::Index i = 0; i < v.rows(); ++i) {
    if (std::abs(v(i, col)) > 1e-12) return std::arg(v(i, col));
  }
  return 0.0;
}

}  // namespace

EigenSystem unitary_eig(const ComplexMatrix& u) {
  if (u.rows() == 0) throw DimensionError("unitary_eig: empty matrix");
  const double defect = unitarity_defect(u);
  if (defect > kUnitaryTol) {
    throw PreconditionError("unitary_eig: matrix is not unitary (defect " +
                            std::to_string(defect) + ")");
  }
  Eigen::ComplexSchur<ComplexMatrix> schur(u);
  if (schur.info() != Eigen::Success) throw Error("unitary_eig: Schur iteration did not converge");
  const ComplexMatrix& t = schur.matrixT();
  const ComplexMatrix& q = schur.matrixU();
  const Eigen::Index n = u.rows();

  std::vector<double> phases(n);
  std::vector<double> tie(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    phases[j] = wrap_phase(std::arg(t(j, j)));
    tie[j] = first_component_arg(q, j);
  }
  std::vector<Eigen::Index> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    if (phases[a] != phases[b]) return phases[a] < phases[b];
    return tie[a] < tie[b];
  });

  EigenSystem out;
  out.values.resize(n);
  out.vectors.resize(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    out.values[j] = phases[order[j]];
    out.vectors.col(j) = q.col(order[j]);
  }
  for (Eigen::Index j = 0; j < n; ++j) {
    const Complex lambda = std::polar(1.0, out.values[j]);
    const double r = (u * out.vectors.col(j) - lambda * out.vectors.col(j)).norm();
    out.residual = std::max(out.residual, r);
  }
  for (Eigen::Index j = 0; j + 1 < n; ++j) {
    if (out.values[j + 1] - out.values[j] < kDegeneracyGap) out.degenerate = true;
  }
  if (n > 1 && out.values.front() + 2.0 * std::numbers::pi - out.values.back() < kDegeneracyGap) {
    out.degenerate = true;
  }
  return out;
}

ComplexMatrix reconstruct_unitary(const EigenSystem& eig) {
  const Eigen::Index n = static_cast<Eigen::Index>(eig.values.size());
  Eigen::VectorXcd diag(n);
  for (Eigen::Index j = 0; j < n; ++j) diag(j) = std::polar(1.0, eig.values[j]);
  return eig.vectors * diag.asDiagonal() * eig.vectors.adjoint();
}

ComplexMatrix hermitian_expm(const ComplexMatrix& h, double scale) {
  const EigenSystem eig = hermitian_eig(h);
  const Eigen::Index n = h.rows();
  Eigen::VectorXcd diag(n);
  for (Eigen::Index j = 0; j < n; ++j) diag(j) = std::polar(1.0, -scale * eig.values[j]);
  return eig.vectors * diag.asDiagonal() * eig.vectors.adjoint();
}

ComplexMatrix sample_gue_unscaled(std::size_t dim, RngStream& rng) {
  if (dim < 2) throw PreconditionError("sample_gue: dim must be at least 2");
  const auto n = static_cast<Eigen::Index>(dim);
  const double s = 1.0 / std::sqrt(2.0);
  ComplexMatrix a(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const double re = rng.normal();
      const double im = rng.normal();
      a(i, j) = Complex(s * re, s * im);
    }
  }
  ComplexMatrix h(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    h(i, i) = Complex(a(i, i).real(), 0.0);
    for (Eigen::Index j = i + 1; j < n; ++j) {
      h(i, j) = 0.5 * (a(i, j) + std::conj(a(j, i)));
      h(j, i) = std::conj(h(i, j));
    }
  }
  return h;
}

double hermitian_spectral_norm(const ComplexMatrix& h) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().cwiseAbs().maxCoeff();
}

ComplexMatrix sample_gue(std::size_t dim, RngStream& rng) {
  ComplexMatrix h = sample_gue_unscaled(dim, rng);
  const double target = std::log2(static_cast<double>(dim));
  return h * (target / hermitian_spectral_norm(h));
}

}  // namespace nmloc
