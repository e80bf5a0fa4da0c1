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

// Run configuration and the three experiment drivers: Poincare-sphere sweeps,
// spectral statistics and cutoff-time saturation curves.
//
// Config files hold `key = value` lines; `#` starts a comment. Keys:
//
//   n_qubits, b_perp, b_par, epsilon, coupling        (required)
//   t_cut                  default 10000
//   theta_min theta_max theta_step phi_min phi_max phi_step
//                          default [0, pi] x [0, 2 pi), step 0.1
//   seed                   default 1 (GUE sample m uses stream m)
//   gue_samples            default 1, > 1 only with VGUE
//   normalize_by_tcut      true/false, default false
//   ipr_basis              AUTO | SECTOR_K0 | FULL, default AUTO
//   eigen_operator         unperturbed | plus, default unperturbed
//   output_path            default "-" (stdout)
//   tail_window_fraction   default 0.5
//
// Unknown or repeated keys are errors.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "nmloc/chain.hpp"
#include "nmloc/coherent.hpp"
#include "nmloc/dynamics.hpp"
#include "nmloc/measures.hpp"
#include "nmloc/symmetry.hpp"

namespace nmloc {

enum class IprBasisChoice { Auto, SectorK0, Full };

/// Operator whose eigenbasis defines the IPR and whose spectrum is analysed.
enum class EigenOperator { Unperturbed, Plus };

struct RunConfig {
  ChainParams chain;
  int t_cut = 10000;
  SphereGrid grid;
  std::uint64_t seed = 1;
  int gue_samples = 1;
  bool normalize_by_tcut = false;
  IprBasisChoice ipr_basis = IprBasisChoice::Auto;
  EigenOperator eigen_operator = EigenOperator::Plus;
  std::string output_path = "-";
  double tail_window_fraction = 0.5;

  void validate() const;
};

RunConfig parse_config(std::istream& in);
RunConfig load_config(const std::string& path);
/// Canonical `key = value` rendering, plus the GUE normalization convention.
std::string format_config(const RunConfig& config);

/// AUTO becomes SECTOR_K0 whenever the diagonalized operator keeps the
/// translation symmetry, FULL otherwise.
IprBasis resolve_ipr_basis(const RunConfig& config);

/// Chain parameters with the GUE seed filled in from the run seed.
ChainParams effective_chain(const RunConfig& config);

/// Eigenbasis used to score initial states, computed once per Floquet pair.
class IprEvaluator {
 public:
  IprEvaluator(const RunConfig& config, const FloquetPair& pair);

  IprResult operator()(const ComplexVector& full_state) const;
  const EigenSystem& eigensystem() const { return eig_; }
  IprBasis kind() const { return kind_; }

 private:
  IprBasis kind_;
  std::optional<SectorBasis> sector_;
  EigenSystem eig_;
};

struct SweepRow {
  double theta = 0.0;
  double phi = 0.0;
  Hemisphere hemisphere = Hemisphere::North;
  double ipr = 0.0;
  double blp = 0.0;
  double rhp = 0.0;
  double nd_max = 0.0;
  double nd_avg = 0.0;
  double ng_max = 0.0;
  double ng_avg = 0.0;
  double f_asym = 0.0;      // tail mean of |f|^2
  double f_amp_asym = 0.0;  // tail mean of |f|
  long clamp_events = 0;
};

/// Rough count of amplitude updates a sweep performs.
double estimated_sweep_cost(const RunConfig& config);

/// One row per grid point in enumeration order. For VGUE every column is the
/// mean over gue_samples realizations (clamp_events is summed).
std::vector<SweepRow> run_sweep(const RunConfig& config);
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);

SpectralReport run_spectral(const RunConfig& config);
void write_spectral_summary(std::ostream& out, const SpectralReport& report);

struct SaturationRow {
  int t_cut = 0;
  double blp = 0.0;
  double rhp = 0.0;
  double blp_norm = 0.0;
  double rhp_norm = 0.0;
  double nd_max = 0.0;
  double nd_avg = 0.0;
  double ng_max = 0.0;
  double ng_avg = 0.0;
};

/// Evolves once to the last checkpoint and evaluates every measure on each
/// prefix [0, checkpoint].
std::vector<SaturationRow> run_saturation(const RunConfig& config, const CoherentSpec& spec,
                                          const std::vector<int>& checkpoints);
void write_saturation_csv(std::ostream& out, const std::vector<SaturationRow>& rows);

/// f(t) for one initial state up to config.t_cut (GUE stream 0).
FidelitySeries run_series(const RunConfig& config, const CoherentSpec& spec);

/// NMLOC_WORKERS if set, otherwise the hardware concurrency.
unsigned worker_count();

}  // namespace nmloc
