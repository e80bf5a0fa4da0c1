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

#include "nmloc/dynamics.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <ostream>

#include "nmloc/error.hpp"

namespace nmloc {

std::vector<double> FidelitySeries::amplitudes() const {
  std::vector<double> out(f.size());
  for (std::size_t t = 0; t < f.size(); ++t) out[t] = std::abs(f[t]);
  return out;
}

namespace {

// FNV-1a over the raw bytes of each field.
class Fnv1a {
 public:
  template <typename T>
  void add(const T& value) {
    unsigned char bytes[sizeof(T)];
    std::memcpy(bytes, &value, sizeof(T));
    for (unsigned char b : bytes) {
      hash_ ^= b;
      hash_ *= 0x100000001b3ULL;
    }
  }
  std::uint64_t value() const { return hash_; }

 private:
  std::uint64_t hash_ = 0xcbf29ce484222325ULL;
};

}  // namespace

std::uint64_t fingerprint(const ChainParams& params, const CoherentSpec& spec) {
  Fnv1a h;
  h.add(params.n_qubits);
  h.add(params.b_perp);
  h.add(params.b_par);
  h.add(params.epsilon);
  h.add(static_cast<int>(params.coupling));
  h.add(params.gue_seed.value_or(0));
  h.add(spec.theta);
  h.add(spec.phi);
  return h.value();
}

FidelitySeries fidelity_series(const FloquetPair& pair, const ComplexVector& psi, int t_cut,
                               std::uint64_t params_fingerprint) {
  if (t_cut < 1) throw PreconditionError("fidelity_series: t_cut must be at least 1");
  if (static_cast<std::size_t>(psi.size()) != pair.plus.dim()) {
    throw DimensionError("fidelity_series: state dimension does not match the chain");
  }
  FidelitySeries out;
  out.params_fingerprint = params_fingerprint;
  out.f.assign(static_cast<std::size_t>(t_cut) + 1, Complex(1.0, 0.0));
  if (pair.trivial()) return out;  // U+ == U-: the echo operator is the identity

  ComplexVector a = psi;
  ComplexVector b = psi;
  for (int t = 1; t <= t_cut; ++t) {
    pair.plus.apply_in_place(a);
    pair.minus.apply_in_place(b);
    out.f[t] = b.dot(a);
  }
  return out;
}

void write_series(std::ostream& out, const FidelitySeries& series) {
  char line[96];
  for (std::size_t t = 0; t < series.f.size(); ++t) {
    std::snprintf(line, sizeof line, "%zu %.12g %.12g\n", t, series.f[t].real(),
                  series.f[t].imag());
    out << line;
  }
}

Eigen::Matrix4d channel_matrix(const ChannelSnapshot& snapshot) {
  const double re = snapshot.f_value.real();
  const double im = snapshot.f_value.imag();
  Eigen::Matrix4d e = Eigen::Matrix4d::Zero();
  e(0, 0) = 1.0;
  e(3, 3) = 1.0;
  e(1, 1) = re;
  e(1, 2) = -im;
  e(2, 1) = im;
  e(2, 2) = re;
  return e;
}

Eigen::Matrix4cd choi_matrix(Complex lambda) {
  // (1/2) sum_ij |i><j| (x) E(|i><j|), basis index 2i + j.
  Eigen::Matrix4cd j = Eigen::Matrix4cd::Zero();
  j(0, 0) = 0.5;
  j(3, 3) = 0.5;
  j(0, 3) = 0.5 * std::conj(lambda);  // E(|0><1|) = conj(lambda) |0><1|
  j(3, 0) = 0.5 * lambda;
  return j;
}

std::array<double, 2> choi_eigenvalues(Complex lambda) {
  const double m = std::abs(lambda);
  return {0.5 * (1.0 - m), 0.5 * (1.0 + m)};
}

double choi_trace_norm(Complex lambda) {
  const auto ev = choi_eigenvalues(lambda);
  return std::abs(ev[0]) + std::abs(ev[1]);
}

AsymptoticFidelity asymptotic_fidelity(const FidelitySeries& series, double tail_fraction) {
  const int t_cut = series.t_cut();
  if (t_cut < 2) throw PreconditionError("asymptotic_fidelity: t_cut must be at least 2");
  if (!(tail_fraction > 0.0 && tail_fraction <= 1.0)) {
    throw ConfigError("tail_window_fraction must lie in (0, 1]");
  }
  AsymptoticFidelity out;
  out.window_end = t_cut;
  out.window_start = t_cut - static_cast<int>(std::floor(tail_fraction * t_cut));
  double sum_f = 0.0;
  double sum_f2 = 0.0;
  for (int t = out.window_start; t <= t_cut; ++t) {
    const double a = std::abs(series.f[t]);
    sum_f += a;
    sum_f2 += a * a;
  }
  const double n = out.window_end - out.window_start + 1;
  out.mean_F = sum_f / n;
  out.mean_F2 = sum_f2 / n;
  return out;
}

}  // namespace nmloc
