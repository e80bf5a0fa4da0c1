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

#include <catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

#include "nmloc/chain.hpp"
#include "nmloc/coherent.hpp"
#include "nmloc/error.hpp"
#include "nmloc/symmetry.hpp"
#include "oracles.hpp"

using namespace nmloc;
using Catch::Matchers::WithinAbs;

namespace {

ChainParams make_params(int n, Coupling c, double eps, double bp, double bz) {
  ChainParams p;
  p.n_qubits = n;
  p.b_perp = bp;
  p.b_par = bz;
  p.epsilon = eps;
  p.coupling = c;
  return p;
}

double mean(const std::vector<double>& v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

}  // namespace

TEST_CASE("cyclic shift", "[symmetry]") {
  CHECK(cyclic_shift(0b001, 3) == 0b010);
  CHECK(cyclic_shift(0b100, 3) == 0b001);
  CHECK(cyclic_shift(0b0110, 4) == 0b1100);
  std::uint64_t x = 0b10110;
  for (int i = 0; i < 5; ++i) x = cyclic_shift(x, 5);
  CHECK(x == 0b10110);
}

TEST_CASE("sector dimensions", "[symmetry]") {
  CHECK(build_sector(10, 0).dim() == 108);
  CHECK(build_sector(12, 0).dim() == 352);
  CHECK(build_sector(2, 0).dim() == 3);
  CHECK(build_sector(2, 1).dim() == 1);
  for (int n = 1; n <= 14; ++n) {
    std::size_t total = 0;
    for (int k = 0; k < n; ++k) total += build_sector(n, k).dim();
    CHECK(total == (std::size_t{1} << n));
    CHECK(static_cast<long>(build_sector(n, 0).dim()) == oracle::necklace_count(n));
  }
  CHECK_THROWS_AS(build_sector(4, 4), PreconditionError);
}

TEST_CASE("momentum basis is orthonormal and diagonalizes T", "[symmetry]") {
  const int n = 6;
  for (int k = 0; k < n; ++k) {
    const SectorBasis s = build_sector(n, k);
    const auto d = static_cast<Eigen::Index>(s.dim());
    ComplexMatrix vecs(64, d);
    for (Eigen::Index a = 0; a < d; ++a) {
      ComplexVector e = ComplexVector::Zero(d);
      e(a) = 1.0;
      vecs.col(a) = s.embed(e);
      // T |r, k> = exp(2 pi i k / N) |r, k>
      const ComplexVector tv = translate(vecs.col(a), n);
      const Complex eig = std::polar(1.0, 2.0 * std::numbers::pi * k / n);
      CHECK((tv - eig * vecs.col(a)).norm() < 1e-12);
    }
    CHECK(gram_defect(vecs) < 1e-12);
    ComplexVector coords(d);
    for (Eigen::Index a = 0; a < d; ++a) coords(a) = Complex(0.1 * a, -0.2 * a + 1.0);
    CHECK((s.project(s.embed(coords)) - coords).norm() < 1e-12);
  }
}

TEST_CASE("identity operator gives identity blocks", "[symmetry]") {
  const int n = 4;
  // Zero kick and zero bonds: U = I.
  const FloquetOperator id(n, std::vector<KickField>(n), std::vector<double>(n, 0.0));
  for (int k = 0; k < n; ++k) {
    const ComplexMatrix b = sector_matrix(id, build_sector(n, k));
    CHECK((b - ComplexMatrix::Identity(b.rows(), b.cols())).cwiseAbs().maxCoeff() < 1e-14);
  }
}

TEST_CASE("sector eigenphases reproduce the full spectrum", "[symmetry]") {
  for (Coupling c : {Coupling::VJ, Coupling::VB}) {
    for (int n = 2; n <= 6; ++n) {
      const FloquetPair pair = build_floquet_pair(make_params(n, c, 0.15, 1.1, 1.4));
      std::vector<double> pooled;
      for (int k = 0; k < n; ++k) {
        const EigenSystem e = unitary_eig(sector_matrix(pair.plus, build_sector(n, k)));
        pooled.insert(pooled.end(), e.values.begin(), e.values.end());
      }
      std::sort(pooled.begin(), pooled.end());
      const EigenSystem full = unitary_eig(assemble_dense(pair.plus));
      REQUIRE(pooled.size() == full.values.size());
      double worst = 0.0;
      for (std::size_t i = 0; i < pooled.size(); ++i) {
        worst = std::max(worst, std::abs(wrap_phase(pooled[i] - full.values[i])));
      }
      INFO("coupling " << to_string(c) << " n " << n);
      CHECK(worst < 1e-9);
    }
  }
}

TEST_CASE("broken translation symmetry is detected", "[symmetry]") {
  for (Coupling c : {Coupling::V01, Coupling::V0}) {
    const FloquetPair pair = build_floquet_pair(make_params(5, c, 0.2, 1.1, 1.4));
    CHECK_THROWS_AS(sector_matrix(pair.plus, build_sector(5, 0)), SymmetryViolation);
  }
}

TEST_CASE("IPR bounds", "[symmetry]") {
  const FloquetPair pair = build_floquet_pair(make_params(5, Coupling::V0, 0.2, 1.1, 1.4));
  const EigenSystem eig = unitary_eig(assemble_dense(pair.plus));
  const IprResult one = ipr(eig.vectors.col(3), eig, IprBasis::Full);
  CHECK_THAT(one.value, WithinAbs(1.0, 1e-12));
  CHECK(one.basis_kind == IprBasis::Full);

  for (int d : {2, 5, 32}) {
    ComplexVector psi = ComplexVector::Zero(32);
    for (int i = 0; i < d; ++i) psi += eig.vectors.col(i) * std::polar(1.0, 0.3 * i);
    psi /= psi.norm();
    CHECK_THAT(ipr(psi, eig, IprBasis::Full).value, WithinAbs(1.0 / d, 1e-12));
  }

  // A state outside the span of a truncated basis.
  EigenSystem partial = eig;
  partial.vectors = eig.vectors.leftCols(10);
  partial.values.resize(10);
  CHECK_THROWS_AS(ipr(eig.vectors.col(20), partial, IprBasis::Full), PreconditionError);
  CHECK_THROWS_AS(ipr(ComplexVector::Ones(16), eig, IprBasis::Full), DimensionError);
}

TEST_CASE("sector IPR equals full-space IPR for coherent states", "[symmetry]") {
  for (int n : {4, 6, 8}) {
    const FloquetPair pair = build_floquet_pair(make_params(n, Coupling::VJ, 0.1, 0.7, 1.4));
    const SectorBasis k0 = build_sector(n, 0);
    const EigenSystem sector = unitary_eig(sector_matrix(pair.plus, k0));
    const EigenSystem full = unitary_eig(assemble_dense(pair.plus));
    for (const CoherentSpec spec : {CoherentSpec{0.3, 0.0}, CoherentSpec{1.5, 3.5},
                                    CoherentSpec{2.8, 4.8}}) {
      const ComplexVector psi = build_coherent_state(spec, n);
      const double a = ipr(k0.project(psi), sector, IprBasis::SectorK0).value;
      const double b = ipr(psi, full, IprBasis::Full).value;
      INFO("n " << n << " theta " << spec.theta);
      CHECK_THAT(a, WithinAbs(b, 1e-8));
      CHECK(a >= 1.0 / static_cast<double>(k0.dim()) - 1e-12);
      CHECK(a <= 1.0 + 1e-12);
    }
  }
}

TEST_CASE("unfolded spacings", "[symmetry]") {
  const int n = 8;
  const FloquetPair pair = build_floquet_pair(make_params(n, Coupling::VJ, 0.1, 1.4, 1.4));
  const SpectralReport r = spacing_statistics(pair.plus, n);
  CHECK(r.sectors_used == std::vector<int>{1, 2, 3, 5, 6, 7});
  std::size_t expected = 0;
  std::size_t offset = 0;
  for (int k : r.sectors_used) {
    const std::size_t d = build_sector(n, k).dim();
    expected += d;
    const std::vector<double> chunk(r.spacings.begin() + static_cast<long>(offset),
                                    r.spacings.begin() + static_cast<long>(offset + d));
    CHECK_THAT(mean(chunk), WithinAbs(1.0, 1e-12));
    for (double s : chunk) CHECK(s >= 0.0);
    offset += d;
  }
  CHECK(r.spacings.size() == expected);
  CHECK(r.brody_q >= 0.0);
  CHECK(r.brody_q <= 1.2);

  const FloquetPair odd = build_floquet_pair(make_params(5, Coupling::VB, 0.1, 1.4, 1.4));
  CHECK(spacing_statistics(odd.plus, 5).sectors_used == std::vector<int>{1, 2, 3, 4});
}

TEST_CASE("Brody distribution reductions", "[symmetry]") {
  for (double s : {0.0, 0.1, 0.5, 1.0, 2.0, 4.0}) {
    CHECK_THAT(brody_pdf(s, 0.0), WithinAbs(std::exp(-s), 1e-14));
    CHECK_THAT(brody_cdf(s, 0.0), WithinAbs(poisson_cdf(s), 1e-14));
    const double wig = 0.5 * std::numbers::pi * s * std::exp(-std::numbers::pi * s * s / 4);
    CHECK_THAT(brody_pdf(s, 1.0), WithinAbs(wig, 1e-14));
    CHECK_THAT(brody_cdf(s, 1.0), WithinAbs(wigner_cdf(s), 1e-14));
  }
  CHECK_THAT(brody_alpha(1.0), WithinAbs(std::numbers::pi / 4, 1e-15));
  CHECK_THAT(brody_alpha(0.0), WithinAbs(1.0, 1e-15));
  // Unit mean for every q, as the integral of the survival function.
  for (double q : {0.0, 0.3, 0.77, 1.0, 1.2}) {
    CHECK_THAT(brody_cdf(40.0, q), WithinAbs(1.0, 1e-15));
    double m = 0.0;
    const double h = 1e-4;
    for (double s = h / 2; s < 40.0; s += h) m += (1.0 - brody_cdf(s, q)) * h;
    CHECK_THAT(m, WithinAbs(1.0, 1e-6));
  }
}

TEST_CASE("Brody fit recovers sampled parameters", "[symmetry]") {
  for (double q : {0.0, 0.5, 1.0}) {
    const auto sample = oracle::sample_brody(q, 10000, 900 + static_cast<std::uint64_t>(10 * q));
    const BrodyFit fit = brody_fit(sample);
    INFO("q = " << q);
    CHECK_THAT(fit.q, WithinAbs(q, 0.05));
    CHECK(fit.loglik >= brody_loglik(sample, std::clamp(q + 0.1, 0.0, 1.2)));
  }
  CHECK(brody_fit(oracle::sample_brody(0.0, 10000, 1)).q < 0.1);
  CHECK(brody_fit(oracle::sample_brody(1.0, 10000, 2)).q > 0.9);
  CHECK_THROWS_AS(brody_fit(std::vector<double>(49, 1.0)), PreconditionError);
}

TEST_CASE("KS distance", "[symmetry]") {
  const auto poisson = oracle::sample_brody(0.0, 5000, 3);
  const auto wigner = oracle::sample_brody(1.0, 5000, 4);
  CHECK(ks_distance(poisson, poisson_cdf) < ks_distance(poisson, wigner_cdf));
  CHECK(ks_distance(wigner, wigner_cdf) < ks_distance(wigner, poisson_cdf));
  CHECK(ks_distance(poisson, poisson_cdf) < 0.03);
  CHECK_THAT(ks_distance(std::vector<double>{0.5}, [](double) { return 0.5; }),
             WithinAbs(0.5, 1e-15));
}

TEST_CASE("spacing histogram", "[symmetry]") {
  const auto sample = oracle::sample_brody(1.0, 20000, 8);
  const auto hist = spacing_histogram(sample);
  REQUIRE(hist.size() == 50);
  CHECK_THAT(hist.front().first, WithinAbs(0.05, 1e-15));
  CHECK_THAT(hist.back().first, WithinAbs(4.95, 1e-12));
  double area = 0.0;
  for (const auto& [c, d] : hist) area += 0.1 * d;
  CHECK(area <= 1.0 + 1e-12);
  CHECK(area > 0.99);
  std::ostringstream out;
  write_histogram(out, sample);
  CHECK(out.str().rfind("0.05 ", 0) == 0);
}
