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

#include "nmloc/symmetry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <string>

#include "nmloc/error.hpp"

namespace nmloc {

std::uint64_t cyclic_shift(std::uint64_t index, int n_qubits) {
  const std::uint64_t mask = (std::uint64_t{1} << n_qubits) - 1;
  return ((index << 1) | (index >> (n_qubits - 1))) & mask;
}

ComplexVector translate(const ComplexVector& state, int n_qubits) {
  const auto dim = static_cast<std::uint64_t>(state.size());
  if (dim != (std::uint64_t{1} << n_qubits)) throw DimensionError("translate: dimension mismatch");
  ComplexVector out(state.size());
  for (std::uint64_t b = 0; b < dim; ++b) {
    out(static_cast<Eigen::Index>(cyclic_shift(b, n_qubits))) = state(static_cast<Eigen::Index>(b));
  }
  return out;
}

SectorBasis::SectorBasis(int n_qubits, int k) : n_qubits_(n_qubits), k_(k) {
  if (n_qubits < 1 || n_qubits > 24) throw DimensionError("SectorBasis: bad qubit count");
  if (k < 0 || k >= n_qubits) throw PreconditionError("SectorBasis: k must lie in [0, N)");
  const std::uint64_t dim = std::uint64_t{1} << n_qubits;
  slot_.assign(dim, -2);  // -2 unvisited, -1 orbit not in this sector
  shift_.assign(dim, 0);
  for (std::uint64_t r = 0; r < dim; ++r) {
    if (slot_[r] != -2) continue;
    // r is the smallest unvisited index, hence the orbit minimum.
    int period = 1;
    for (std::uint64_t x = cyclic_shift(r, n_qubits); x != r; x = cyclic_shift(x, n_qubits)) {
      ++period;
    }
    const bool member = (static_cast<long>(k) * period) % n_qubits == 0;
    const std::int32_t slot = member ? static_cast<std::int32_t>(orbits_.size()) : -1;
    if (member) orbits_.push_back(Orbit{r, period});
    std::uint64_t x = r;
    for (int j = 0; j < period; ++j) {
      slot_[x] = slot;
      shift_[x] = static_cast<std::uint8_t>(j);
      x = cyclic_shift(x, n_qubits);
    }
  }
  phase_.resize(n_qubits);
  for (int j = 0; j < n_qubits; ++j) {
    phase_[j] = std::polar(1.0, -2.0 * std::numbers::pi * k * j / n_qubits);
  }
}

ComplexVector SectorBasis::project(const ComplexVector& full) const {
  if (static_cast<std::size_t>(full.size()) != slot_.size()) {
    throw DimensionError("SectorBasis::project: dimension mismatch");
  }
  ComplexVector coords = ComplexVector::Zero(static_cast<Eigen::Index>(orbits_.size()));
  for (std::size_t b = 0; b < slot_.size(); ++b) {
    const std::int32_t a = slot_[b];
    if (a < 0) continue;
    coords(a) += std::conj(phase_[shift_[b]]) * full(static_cast<Eigen::Index>(b));
  }
  for (std::size_t a = 0; a < orbits_.size(); ++a) {
    coords(static_cast<Eigen::Index>(a)) /= std::sqrt(static_cast<double>(orbits_[a].period));
  }
  return coords;
}

ComplexVector SectorBasis::embed(const ComplexVector& coords) const {
  if (static_cast<std::size_t>(coords.size()) != orbits_.size()) {
    throw DimensionError("SectorBasis::embed: dimension mismatch");
  }
  ComplexVector full = ComplexVector::Zero(static_cast<Eigen::Index>(slot_.size()));
  for (std::size_t b = 0; b < slot_.size(); ++b) {
    const std::int32_t a = slot_[b];
    if (a < 0) continue;
    full(static_cast<Eigen::Index>(b)) =
        phase_[shift_[b]] * coords(a) / std::sqrt(static_cast<double>(orbits_[a].period));
  }
  return full;
}

SectorBasis build_sector(int n_qubits, int k) { return SectorBasis(n_qubits, k); }

ComplexMatrix sector_matrix(const FloquetOperator& op, const SectorBasis& basis) {
  if (op.n_qubits() != basis.n_qubits()) throw DimensionError("sector_matrix: qubit count mismatch");
  const auto d = static_cast<Eigen::Index>(basis.dim());
  ComplexMatrix block(d, d);
  ComplexVector unit = ComplexVector::Zero(d);
  for (Eigen::Index a = 0; a < d; ++a) {
    unit.setZero();
    unit(a) = 1.0;
    ComplexVector v = basis.embed(unit);
    op.apply_in_place(v);
    block.col(a) = basis.project(v);
  }
  const double defect = unitarity_defect(block);
  if (defect > kUnitaryTol) {
    throw SymmetryViolation("sector_matrix: block k=" + std::to_string(basis.k()) +
                            " is not unitary (defect " + std::to_string(defect) +
                            "); the operator breaks translation symmetry");
  }
  return block;
}

IprResult ipr(const ComplexVector& state, const EigenSystem& eig, IprBasis kind) {
  if (state.size() != eig.vectors.rows()) throw DimensionError("ipr: dimension mismatch");
  const ComplexVector overlaps = eig.vectors.adjoint() * state;
  double weight = 0.0;
  double value = 0.0;
  for (Eigen::Index i = 0; i < overlaps.size(); ++i) {
    const double p = std::norm(overlaps(i));
    weight += p;
    value += p * p;
  }
  if (std::abs(1.0 - weight) > 1e-8) {
    throw PreconditionError("ipr: state has weight " + std::to_string(weight) +
                            " in the eigenbasis span (expected 1)");
  }
  return IprResult{value, kind, eig.degenerate};
}

double poisson_cdf(double s) { return s <= 0.0 ? 0.0 : 1.0 - std::exp(-s); }

double wigner_cdf(double s) {
  return s <= 0.0 ? 0.0 : 1.0 - std::exp(-std::numbers::pi * s * s / 4.0);
}

double brody_alpha(double q) { return std::exp((q + 1.0) * std::lgamma((q + 2.0) / (q + 1.0))); }

double brody_pdf(double s, double q) {
  if (s < 0.0) return 0.0;
  const double a = brody_alpha(q);
  return (q + 1.0) * a * std::pow(s, q) * std::exp(-a * std::pow(s, q + 1.0));
}

double brody_cdf(double s, double q) {
  if (s <= 0.0) return 0.0;
  return 1.0 - std::exp(-brody_alpha(q) * std::pow(s, q + 1.0));
}

namespace {
constexpr double kSpacingFloor = 1e-12;
constexpr double kBrodyMax = 1.2;
}  // namespace

double brody_loglik(std::span<const double> spacings, double q) {
  const double a = brody_alpha(q);
  const double base = std::log(q + 1.0) + std::log(a);
  double ll = 0.0;
  for (double s : spacings) {
    const double x = std::max(s, kSpacingFloor);
    ll += base + q * std::log(x) - a * std::pow(x, q + 1.0);
  }
  return ll;
}

BrodyFit brody_fit(std::span<const double> spacings) {
  if (spacings.size() < 50) {
    throw PreconditionError("brody_fit: need at least 50 spacings, got " +
                            std::to_string(spacings.size()));
  }
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double lo = 0.0, hi = kBrodyMax;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = brody_loglik(spacings, x1);
  double f2 = brody_loglik(spacings, x2);
  while (hi - lo > 1e-5) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = brody_loglik(spacings, x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = brody_loglik(spacings, x1);
    }
  }
  BrodyFit best{0.5 * (lo + hi), 0.0};
  best.loglik = brody_loglik(spacings, best.q);
  // The maximum may sit on the boundary of the bracket.
  for (double edge : {0.0, kBrodyMax}) {
    const double ll = brody_loglik(spacings, edge);
    if (ll > best.loglik) best = BrodyFit{edge, ll};
  }
  return best;
}

double ks_distance(std::span<const double> sample, const std::function<double(double)>& cdf) {
  if (sample.empty()) throw PreconditionError("ks_distance: empty sample");
  std::vector<double> x(sample.begin(), sample.end());
  std::sort(x.begin(), x.end());
  const double n = static_cast<double>(x.size());
  double d = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double f = cdf(x[i]);
    d = std::max({d, (static_cast<double>(i) + 1.0) / n - f, f - static_cast<double>(i) / n});
  }
  return d;
}

SpectralReport spacing_statistics(const FloquetOperator& op, int n_qubits) {
  if (op.n_qubits() != n_qubits) throw DimensionError("spacing_statistics: qubit count mismatch");
  SpectralReport report;
  for (int k = 0; k < n_qubits; ++k) {
    if (k == 0 || (n_qubits % 2 == 0 && k == n_qubits / 2)) continue;
    const SectorBasis basis(n_qubits, k);
    const EigenSystem eig = unitary_eig(sector_matrix(op, basis));
    report.degenerate = report.degenerate || eig.degenerate;
    const std::size_t d = eig.values.size();
    const double unfold = static_cast<double>(d) / (2.0 * std::numbers::pi);
    for (std::size_t i = 0; i + 1 < d; ++i) {
      report.spacings.push_back((eig.values[i + 1] - eig.values[i]) * unfold);
    }
    report.spacings.push_back((eig.values.front() + 2.0 * std::numbers::pi - eig.values.back()) *
                              unfold);
    report.sectors_used.push_back(k);
  }
  if (report.spacings.empty()) return report;
  report.ks_poisson = ks_distance(report.spacings, poisson_cdf);
  report.ks_wigner = ks_distance(report.spacings, wigner_cdf);
  if (report.spacings.size() >= 50) {
    const BrodyFit fit = brody_fit(report.spacings);
    report.brody_q = fit.q;
    report.brody_loglik = fit.loglik;
    report.ks_brody =
        ks_distance(report.spacings, [q = fit.q](double s) { return brody_cdf(s, q); });
  }
  return report;
}

std::vector<std::pair<double, double>> spacing_histogram(std::span<const double> spacings) {
  constexpr int kBins = 50;
  constexpr double kWidth = 0.1;
  std::vector<std::pair<double, double>> hist(kBins);
  std::vector<long> counts(kBins, 0);
  for (double s : spacings) {
    const auto bin = static_cast<long>(std::floor(s / kWidth));
    if (bin >= 0 && bin < kBins) ++counts[bin];
  }
  const double norm = spacings.empty() ? 0.0 : 1.0 / (static_cast<double>(spacings.size()) * kWidth);
  for (int b = 0; b < kBins; ++b) hist[b] = {(b + 0.5) * kWidth, counts[b] * norm};
  return hist;
}

void write_histogram(std::ostream& out, std::span<const double> spacings) {
  char line[64];
  for (const auto& [center, density] : spacing_histogram(spacings)) {
    std::snprintf(line, sizeof line, "%.2f %.10g\n", center, density);
    out << line;
  }
}

}  // namespace nmloc
