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

// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "nmloc/chain.hpp"
#include "nmloc/coherent.hpp"
#include "nmloc/dynamics.hpp"
#include "nmloc/measures.hpp"
#include "nmloc/sweep.hpp"
#include "nmloc/symmetry.hpp"
#include "oracles.hpp"

using namespace nmloc;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string format(const char* fmt, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, fmt, args...);
  return buf;
}

void info(const std::string& line) { std::printf("INFO %s\n", line.c_str()); }

RunConfig chain_config(int n, double b_perp, Coupling c, EigenOperator op) {
  RunConfig cfg;
  cfg.chain.n_qubits = n;
  cfg.chain.b_perp = b_perp;
  cfg.chain.b_par = 1.4;
  cfg.chain.epsilon = 0.1;
  cfg.chain.coupling = c;
  cfg.eigen_operator = op;
  return cfg;
}

std::vector<double> fig3_iprs(EigenOperator op) {
  const RunConfig cfg = chain_config(10, 0.1, Coupling::VJ, op);
  const FloquetPair pair = build_floquet_pair(effective_chain(cfg));
  const IprEvaluator scorer(cfg, pair);
  std::vector<double> out;
  for (const CoherentSpec& s : {CoherentSpec{2.8, 4.8}, CoherentSpec{3.0, 2.2}, CoherentSpec{1.5, 3.5}}) {
    out.push_back(scorer(build_coherent_state(s, 10)).value);
  }
  return out;
}

Outcome ipr_regression() {
  const std::vector<double> expect{0.457, 0.994, 0.046};
  const std::vector<double> got = fig3_iprs(EigenOperator::Plus);
  bool pass = true;
  for (std::size_t i = 0; i < 3; ++i) pass = pass && std::abs(got[i] - expect[i]) <= 0.02;
  const std::vector<double> bare = fig3_iprs(EigenOperator::Unperturbed);
  info(format("ipr in the unperturbed k=0 eigenbasis: %.4f %.4f %.4f", bare[0], bare[1], bare[2]));
  return {pass, format("U+ k=0 eigenbasis: %.4f %.4f %.4f (expected 0.457 0.994 0.046 +- 0.02)",
                       got[0], got[1], got[2])};
}

Outcome brody_fit_mixed() {
  const SpectralReport r = run_spectral(chain_config(12, 1.0, Coupling::VJ, EigenOperator::Unperturbed));
  const bool pass = std::abs(r.brody_q - 0.77) <= 0.10;
  return {pass, format("N=12 b_perp=1: q = %.4f over %zu spacings (expected 0.77 +- 0.10)", r.brody_q,
                       r.spacings.size())};
}

Outcome regime_ordering() {
  const SpectralReport integ =
      run_spectral(chain_config(12, 0.1, Coupling::VJ, EigenOperator::Unperturbed));
  const SpectralReport chaos =
      run_spectral(chain_config(12, 1.4, Coupling::VJ, EigenOperator::Unperturbed));
  const bool pass = integ.ks_poisson < integ.ks_wigner && chaos.ks_wigner < chaos.ks_poisson;
  return {pass, format("b_perp=0.1: KS_P %.4f KS_W %.4f; b_perp=1.4: KS_P %.4f KS_W %.4f",
                       integ.ks_poisson, integ.ks_wigner, chaos.ks_poisson, chaos.ks_wigner)};
}

Outcome blp_peak() {
  RunConfig cfg = chain_config(10, 0.1, Coupling::VJ, EigenOperator::Plus);
  cfg.t_cut = 10000;
  cfg.grid.theta_step = 0.3;
  cfg.grid.phi_step = 0.3;
  const std::vector<SweepRow> rows = run_sweep(cfg);
  const auto best = std::max_element(rows.begin(), rows.end(),
                                     [](const SweepRow& a, const SweepRow& b) { return a.blp < b.blp; });
  const bool pass = best->ipr >= 0.25 && best->ipr <= 0.55;

  RunConfig bare_cfg = cfg;
  bare_cfg.eigen_operator = EigenOperator::Unperturbed;
  const FloquetPair pair = build_floquet_pair(effective_chain(bare_cfg));
  const IprEvaluator bare(bare_cfg, pair);
  const double bare_ipr = bare(build_coherent_state({best->theta, best->phi}, 10)).value;
  info(format("argmax point ipr in the unperturbed eigenbasis: %.4f", bare_ipr));
  return {pass, format("%zu points, argmax blp %.4f at (%.1f, %.1f) with U+ ipr %.4f (expected [0.25, 0.55])",
                       rows.size(), best->blp, best->theta, best->phi, best->ipr)};
}

oracle::Matrix oracle_operator(const ChainParams& p, double sign) {
  const int n = p.n_qubits;
  std::vector<oracle::KickSpec> kicks(n, {p.b_perp, p.b_par});
  std::vector<double> bonds(n, 1.0);
  const double d = sign * p.epsilon;
  switch (p.coupling) {
    case Coupling::VJ:
      for (auto& j : bonds) j = 1.0 + d;
      break;
    case Coupling::V01:
      bonds[0] = 1.0 + d;
      break;
    case Coupling::VB:
      for (auto& k : kicks) k.bx = p.b_perp + d;
      break;
    case Coupling::V0:
      kicks[0].bx = p.b_perp + d;
      break;
    case Coupling::VGUE: {
      const Eigen::Index dim = Eigen::Index{1} << n;
      oracle::Matrix h = oracle::Matrix::Zero(dim, dim);
      for (int i = 0; i < n; ++i) {
        h += oracle::on_qubit(oracle::pauli_z(), i, n) * oracle::on_qubit(oracle::pauli_z(), (i + 1) % n, n);
      }
      RngStream rng(*p.gue_seed, 0);
      const ComplexMatrix v = sample_gue(static_cast<std::size_t>(dim), rng);
      return oracle::dense_floquet(n, kicks, std::vector<double>(n, 0.0)) *
             oracle::taylor_expm(h + d * v, 1.0, 60);
    }
  }
  return oracle::dense_floquet(n, kicks, bonds);
}

Outcome oracle_equivalence() {
  double worst = 0.0;
  int cases = 0;
  for (Coupling c : {Coupling::VJ, Coupling::V01, Coupling::VB, Coupling::V0, Coupling::VGUE}) {
    for (int n = 2; n <= 5; ++n) {
      ChainParams p;
      p.n_qubits = n;
      p.b_perp = 0.9;
      p.b_par = 1.4;
      p.epsilon = 0.1;
      p.coupling = c;
      p.gue_seed = 2024;
      const FloquetPair pair = build_floquet_pair(p);
      const oracle::Matrix up = oracle_operator(p, +1.0);
      const oracle::Matrix um = oracle_operator(p, -1.0);
      RngStream rng(31, static_cast<std::uint64_t>(10 * n + static_cast<int>(c)));
      for (int s = 0; s < 100; ++s) {
        ComplexVector psi(static_cast<Eigen::Index>(pair.plus.dim()));
        for (auto& x : psi) x = Complex(rng.normal(), rng.normal());
        psi /= psi.norm();
        worst = std::max(worst, (apply_floquet(pair.plus, psi) - up * psi).cwiseAbs().maxCoeff());
        worst = std::max(worst, (apply_floquet(pair.minus, psi) - um * psi).cwiseAbs().maxCoeff());
        ++cases;
      }
    }
  }
  return {worst <= 1e-10, format("%d state/operator cases, max amplitude error %.3g (limit 1e-10)", cases, worst)};
}

Outcome sector_equivalence() {
  double worst = 0.0;
  for (int n = 2; n <= 6; ++n) {
    ChainParams p;
    p.n_qubits = n;
    p.b_perp = 1.0;
    p.b_par = 1.4;
    p.epsilon = 0.1;
    p.coupling = Coupling::VJ;
    const FloquetPair pair = build_floquet_pair(p);
    std::vector<double> pooled;
    for (int k = 0; k < n; ++k) {
      const EigenSystem e = unitary_eig(sector_matrix(pair.plus, build_sector(n, k)));
      pooled.insert(pooled.end(), e.values.begin(), e.values.end());
    }
    std::sort(pooled.begin(), pooled.end());
    const EigenSystem full = unitary_eig(assemble_dense(pair.plus));
    if (pooled.size() != full.values.size()) return {false, format("size mismatch at N=%d", n)};
    for (std::size_t i = 0; i < pooled.size(); ++i) {
      worst = std::max(worst, std::abs(wrap_phase(pooled[i] - full.values[i])));
    }
  }
  return {worst <= 1e-9, format("N=2..6, max eigenphase difference %.3g (limit 1e-9)", worst)};
}

Outcome measure_identities() {
  std::mt19937_64 gen(8080);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int violations = 0;
  double worst_blp = 0.0, worst_rhp = 0.0;
  for (int trial = 0; trial < 10000; ++trial) {
    const int len = 2 + static_cast<int>(gen() % 400);
    std::vector<double> f(len);
    const int style = trial % 4;  // 0 random, 1 with ties, 2 nonincreasing, 3 with floor hits
    f[0] = style == 2 ? 1.0 : u(gen);
    for (int t = 1; t < len; ++t) {
      const double r = u(gen);
      if (style == 2) {
        f[t] = f[t - 1] * (r < 0.2 ? 1.0 : r);
      } else if (style == 1 && r < 0.3) {
        f[t] = f[t - 1];
      } else if (style == 3 && r < 0.1) {
        f[t] = 1e-15 * u(gen);
      } else {
        f[t] = u(gen);
      }
    }
    const NmReport rep = compute_report(f, false);
    const IndicatorSeries g = indicator_G(f);
    // blp sums rises one by one; it may round an ulp below the single largest rise.
    const oracle::ExtremaSums ref = oracle::extrema_pairs(f, kLogFloor);
    bool nonincreasing = true;
    for (int t = 1; t < len; ++t) nonincreasing = nonincreasing && f[t] <= f[t - 1];
    const bool all_zero = rep.blp == 0 && rep.rhp == 0 && rep.nd_max == 0 && rep.nd_avg == 0 &&
                          rep.ng_max == 0 && rep.ng_avg == 0;
    worst_blp = std::max(worst_blp, std::abs(rep.blp - ref.blp));
    worst_rhp = std::max(worst_rhp, std::abs(rep.rhp - ref.rhp) / std::max(1.0, ref.rhp));
    const bool ok = rep.rhp == rep.ng_max && rep.rhp == g.values.back() && rep.nd_avg <= rep.nd_max &&
                    rep.nd_max <= 1.0 && rep.blp >= rep.nd_max - 1e-12 && all_zero == nonincreasing;
    violations += !ok;
  }
  const bool pass = violations == 0 && worst_blp <= 1e-12 && worst_rhp <= 1e-12;
  return {pass, format("10000 series, %d identity violations, extrema-pair deviation blp %.2g rhp %.2g",
                       violations, worst_blp, worst_rhp)};
}

Outcome null_coupling() {
  int runs = 0, failures = 0;
  for (Coupling c : {Coupling::VJ, Coupling::V01, Coupling::VB, Coupling::V0, Coupling::VGUE}) {
    for (double b_perp : {0.1, 1.0, 1.4}) {
      ChainParams p;
      p.n_qubits = 6;
      p.b_perp = b_perp;
      p.b_par = 1.4;
      p.epsilon = 0.0;
      p.coupling = c;
      p.gue_seed = 3;
      const FloquetPair pair = build_floquet_pair(p);
      for (const CoherentSpec& s : {CoherentSpec{0.0, 0.0}, CoherentSpec{1.2, 2.5}, CoherentSpec{2.9, 5.9}}) {
        const FidelitySeries series = fidelity_series(pair, build_coherent_state(s, 6), 1000);
        bool ok = std::all_of(series.f.begin(), series.f.end(), [](Complex f) { return f == Complex(1.0); });
        const NmReport r = compute_report(series, false);
        ok = ok && r.blp == 0 && r.rhp == 0 && r.nd_max == 0 && r.nd_avg == 0 && r.ng_max == 0 &&
             r.ng_avg == 0;
        failures += !ok;
        ++runs;
      }
    }
  }
  return {failures == 0, format("%d runs over 5 couplings x 3 regimes, %d with f != 1 or a nonzero measure",
                                runs, failures)};
}

Outcome channel_validity() {
  double min_eig = 1.0, worst_identity = 0.0;
  long snapshots = 0;
  for (Coupling c : {Coupling::VJ, Coupling::V01, Coupling::VB, Coupling::V0, Coupling::VGUE}) {
    for (double b_perp : {0.1, 1.4}) {
      ChainParams p;
      p.n_qubits = 8;
      p.b_perp = b_perp;
      p.b_par = 1.4;
      p.epsilon = 0.1;
      p.coupling = c;
      p.gue_seed = 11;
      const FloquetPair pair = build_floquet_pair(p);
      const FidelitySeries s = fidelity_series(pair, build_coherent_state({2.8, 4.8}, 8), 2000);
      const IndicatorSeries g = indicator_G(s);
      for (int t = 0; t <= s.t_cut(); ++t) {
        const auto ev = choi_eigenvalues(s.f[t]);
        min_eig = std::min({min_eig, ev[0], ev[1]});
        ++snapshots;
        if (t == s.t_cut() || std::abs(s.f[t]) < kLogFloor || std::abs(s.f[t + 1]) < kLogFloor) continue;
        const double norm = choi_trace_norm(s.f[t + 1] / s.f[t]);
        const double direct = std::max(1.0, std::abs(s.f[t + 1] / s.f[t]));
        const double increment = g.values[t + 1] - g.values[t];
        worst_identity = std::max({worst_identity, std::abs(norm - direct),
                                   std::abs(std::exp(increment) - norm) / norm});
      }
    }
  }
  const bool pass = min_eig >= -1e-12 && worst_identity <= 1e-10;
  return {pass, format("%ld snapshots, min Choi eigenvalue %.3g, trace-norm/G identity error %.3g",
                       snapshots, min_eig, worst_identity)};
}

Outcome brody_self_consistency() {
  bool pass = true;
  std::string detail;
  for (double q : {0.0, 0.5, 1.0}) {
    const auto sample = oracle::sample_brody(q, 10000, 4242 + static_cast<std::uint64_t>(q * 10));
    const double fitted = brody_fit(sample).q;
    pass = pass && std::abs(fitted - q) <= 0.05;
    detail += format("q=%.1f -> %.4f; ", q, fitted);
  }
  detail += "tolerance 0.05";
  return {pass, detail};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {"ipr-regression", ipr_regression},
      {"brody-fit-mixed", brody_fit_mixed},
      {"regime-ordering", regime_ordering},
      {"blp-peak-location", blp_peak},
      {"oracle-equivalence", oracle_equivalence},
      {"sector-equivalence", sector_equivalence},
      {"measure-identities", measure_identities},
      {"null-coupling", null_coupling},
      {"channel-validity", channel_validity},
      {"brody-self-consistency", brody_self_consistency},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s %zu %s: %s [%.1fs]\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].name,
                o.detail.c_str(), secs);
    std::fflush(stdout);
    failed += !o.pass;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
