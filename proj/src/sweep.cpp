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

#include "nmloc/sweep.hpp"

#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "nmloc/error.hpp"

namespace nmloc {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& v) {
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size() || !std::isfinite(out)) {
    throw ConfigError("config key '" + key + "': not a number: '" + v + "'");
  }
  return out;
}

template <typename Int>
Int parse_int(const std::string& key, const std::string& v) {
  Int out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) {
    throw ConfigError("config key '" + key + "': not an integer: '" + v + "'");
  }
  return out;
}

bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  throw ConfigError("config key '" + key + "': expected true or false, got '" + v + "'");
}

const char* to_string(IprBasisChoice b) {
  switch (b) {
    case IprBasisChoice::Auto: return "AUTO";
    case IprBasisChoice::SectorK0: return "SECTOR_K0";
    case IprBasisChoice::Full: return "FULL";
  }
  return "?";
}

const char* to_string(EigenOperator e) {
  return e == EigenOperator::Unperturbed ? "unperturbed" : "plus";
}

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

// Shortest decimal form that parses back to exactly v.
std::string exact(double v) {
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return ec == std::errc() ? std::string(buf, end) : fmt("%.17g", v);
}

}  // namespace

void RunConfig::validate() const {
  effective_chain(*this).validate();
  if (t_cut < 2) throw ConfigError("t_cut must be at least 2");
  if (gue_samples < 1) throw ConfigError("gue_samples must be at least 1");
  if (gue_samples > 1 && chain.coupling != Coupling::VGUE) {
    throw ConfigError("gue_samples > 1 requires coupling = VGUE");
  }
  if (!(tail_window_fraction > 0.0 && tail_window_fraction <= 1.0)) {
    throw ConfigError("tail_window_fraction must lie in (0, 1]");
  }
  if (!(grid.theta_step > 0.0) || !(grid.phi_step > 0.0)) {
    throw ConfigError("grid steps must be positive");
  }
}

RunConfig parse_config(std::istream& in) {
  RunConfig c;
  std::set<std::string> seen;
  using Setter = std::function<void(const std::string&, const std::string&)>;
  const std::map<std::string, Setter> setters = {
      {"n_qubits", [&](auto& k, auto& v) { c.chain.n_qubits = parse_int<int>(k, v); }},
      {"b_perp", [&](auto& k, auto& v) { c.chain.b_perp = parse_double(k, v); }},
      {"b_par", [&](auto& k, auto& v) { c.chain.b_par = parse_double(k, v); }},
      {"epsilon", [&](auto& k, auto& v) { c.chain.epsilon = parse_double(k, v); }},
      {"coupling", [&](auto&, auto& v) { c.chain.coupling = parse_coupling(v); }},
      {"t_cut", [&](auto& k, auto& v) { c.t_cut = parse_int<int>(k, v); }},
      {"theta_min", [&](auto& k, auto& v) { c.grid.theta_min = parse_double(k, v); }},
      {"theta_max", [&](auto& k, auto& v) { c.grid.theta_max = parse_double(k, v); }},
      {"theta_step", [&](auto& k, auto& v) { c.grid.theta_step = parse_double(k, v); }},
      {"phi_min", [&](auto& k, auto& v) { c.grid.phi_min = parse_double(k, v); }},
      {"phi_max", [&](auto& k, auto& v) { c.grid.phi_max = parse_double(k, v); }},
      {"phi_step", [&](auto& k, auto& v) { c.grid.phi_step = parse_double(k, v); }},
      {"seed", [&](auto& k, auto& v) { c.seed = parse_int<std::uint64_t>(k, v); }},
      {"gue_samples", [&](auto& k, auto& v) { c.gue_samples = parse_int<int>(k, v); }},
      {"normalize_by_tcut", [&](auto& k, auto& v) { c.normalize_by_tcut = parse_bool(k, v); }},
      {"ipr_basis",
       [&](auto& k, auto& v) {
         if (v == "AUTO") c.ipr_basis = IprBasisChoice::Auto;
         else if (v == "SECTOR_K0") c.ipr_basis = IprBasisChoice::SectorK0;
         else if (v == "FULL") c.ipr_basis = IprBasisChoice::Full;
         else throw ConfigError("config key '" + k + "': expected AUTO, SECTOR_K0 or FULL");
       }},
      {"eigen_operator",
       [&](auto& k, auto& v) {
         if (v == "unperturbed") c.eigen_operator = EigenOperator::Unperturbed;
         else if (v == "plus") c.eigen_operator = EigenOperator::Plus;
         else throw ConfigError("config key '" + k + "': expected unperturbed or plus");
       }},
      {"output_path", [&](auto&, auto& v) { c.output_path = v; }},
      {"tail_window_fraction",
       [&](auto& k, auto& v) { c.tail_window_fraction = parse_double(k, v); }},
  };

  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(lineno) + ": expected 'key = value'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const auto it = setters.find(key);
    if (it == setters.end()) throw ConfigError("config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    if (!seen.insert(key).second) throw ConfigError("config key '" + key + "' given twice");
    if (value.empty()) throw ConfigError("config key '" + key + "' has no value");
    it->second(key, value);
  }
  for (const char* required : {"n_qubits", "b_perp", "b_par", "epsilon", "coupling"}) {
    if (!seen.count(required)) throw ConfigError(std::string("config is missing '") + required + "'");
  }
  c.validate();
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  return parse_config(in);
}

std::string format_config(const RunConfig& c) {
  std::ostringstream out;
  out << "n_qubits = " << c.chain.n_qubits << '\n'
      << "b_perp = " << exact(c.chain.b_perp) << '\n'
      << "b_par = " << exact(c.chain.b_par) << '\n'
      << "epsilon = " << exact(c.chain.epsilon) << '\n'
      << "coupling = " << to_string(c.chain.coupling) << '\n'
      << "t_cut = " << c.t_cut << '\n'
      << "theta_min = " << exact(c.grid.theta_min) << '\n'
      << "theta_max = " << exact(c.grid.theta_max) << '\n'
      << "theta_step = " << exact(c.grid.theta_step) << '\n'
      << "phi_min = " << exact(c.grid.phi_min) << '\n'
      << "phi_max = " << exact(c.grid.phi_max) << '\n'
      << "phi_step = " << exact(c.grid.phi_step) << '\n'
      << "seed = " << c.seed << '\n'
      << "gue_samples = " << c.gue_samples << '\n'
      << "normalize_by_tcut = " << (c.normalize_by_tcut ? "true" : "false") << '\n'
      << "ipr_basis = " << to_string(c.ipr_basis) << '\n'
      << "eigen_operator = " << to_string(c.eigen_operator) << '\n'
      << "output_path = " << c.output_path << '\n'
      << "tail_window_fraction = " << exact(c.tail_window_fraction) << '\n'
      << "# gue_normalization: V rescaled to spectral norm n_qubits\n";
  return out.str();
}

ChainParams effective_chain(const RunConfig& config) {
  ChainParams p = config.chain;
  if (p.coupling == Coupling::VGUE) p.gue_seed = config.seed;
  return p;
}

IprBasis resolve_ipr_basis(const RunConfig& config) {
  switch (config.ipr_basis) {
    case IprBasisChoice::SectorK0: return IprBasis::SectorK0;
    case IprBasisChoice::Full: return IprBasis::Full;
    case IprBasisChoice::Auto: break;
  }
  if (config.eigen_operator == EigenOperator::Unperturbed) return IprBasis::SectorK0;
  return is_translation_symmetric(config.chain.coupling) ? IprBasis::SectorK0 : IprBasis::Full;
}

IprEvaluator::IprEvaluator(const RunConfig& config, const FloquetPair& pair)
    : kind_(resolve_ipr_basis(config)) {
  const FloquetOperator bare = build_unperturbed(pair.params);
  const FloquetOperator& op = config.eigen_operator == EigenOperator::Plus ? pair.plus : bare;
  if (kind_ == IprBasis::SectorK0) {
    sector_.emplace(op.n_qubits(), 0);
    eig_ = unitary_eig(sector_matrix(op, *sector_));
  } else {
    if (op.dim() > kMaxDenseDim) {
      throw ConfigError("FULL eigenbasis refused above 12 qubits");
    }
    eig_ = unitary_eig(assemble_dense(op));
  }
}

IprResult IprEvaluator::operator()(const ComplexVector& full_state) const {
  if (sector_) return ipr(sector_->project(full_state), eig_, kind_);
  return ipr(full_state, eig_, kind_);
}

double estimated_sweep_cost(const RunConfig& config) {
  const double points = static_cast<double>(enumerate_grid(config.grid).size());
  const double dim = std::ldexp(1.0, config.chain.n_qubits);
  const double per_step = config.chain.coupling == Coupling::VGUE
                              ? dim * dim + dim * config.chain.n_qubits
                              : dim * (config.chain.n_qubits + 1);
  return points * config.gue_samples * config.t_cut * 2.0 * per_step;
}

namespace {

// Runs body(i) for i in [0, n) on a bounded pool; rethrows the first failure.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
  const unsigned workers = std::max(1u, std::min<unsigned>(worker_count(), static_cast<unsigned>(n)));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        body(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = n;
      }
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  if (failure) std::rethrow_exception(failure);
}

// rhp_scale undoes the optional division of rhp by t_cut.
void check_row(const SweepRow& r, double rhp_scale) {
  const double rhp = r.rhp * rhp_scale;
  if (std::abs(r.ng_max - rhp) > 1e-12 * std::max(1.0, std::abs(rhp))) {
    throw Error("internal: ng_max != rhp at theta=" + std::to_string(r.theta));
  }
  if (r.nd_avg > r.nd_max + 1e-15) {
    throw Error("internal: nd_avg > nd_max at theta=" + std::to_string(r.theta));
  }
  if (to_char(r.hemisphere) != to_char(hemisphere_of(r.theta))) {
    throw Error("internal: hemisphere tag mismatch");
  }
}

}  // namespace

unsigned worker_count() {
  if (const char* env = std::getenv("NMLOC_WORKERS")) {
    const int n = std::atoi(env);
    if (n >= 1) return static_cast<unsigned>(n);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<SweepRow> run_sweep(const RunConfig& config) {
  config.validate();
  const ChainParams chain = effective_chain(config);
  const auto points = enumerate_grid(config.grid);
  if (estimated_sweep_cost(config) > 1e12) {
    std::cerr << "warning: sweep needs about " << fmt("%.2g", estimated_sweep_cost(config))
              << " amplitude updates\n";
  }

  std::vector<SweepRow> rows(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    rows[i].theta = points[i].spec.theta;
    rows[i].phi = points[i].spec.phi;
    rows[i].hemisphere = points[i].hemisphere;
  }
  const int samples = config.gue_samples;
  bool warned = false;
  for (int m = 0; m < samples; ++m) {
    RngStream rng(config.seed, static_cast<std::uint64_t>(m));
    const FloquetPair pair = build_floquet_pair(chain, rng);
    const IprEvaluator scorer(config, pair);
    if (scorer.eigensystem().degenerate && !warned) {
      std::cerr << "warning: eigenbasis has degenerate eigenphases; IPR values are ambiguous\n";
      warned = true;
    }
    std::vector<SweepRow> sample(points.size());
    parallel_for(points.size(), [&](std::size_t i) {
      const ComplexVector psi = build_coherent_state(points[i].spec, chain.n_qubits);
      const FidelitySeries series =
          fidelity_series(pair, psi, config.t_cut, fingerprint(chain, points[i].spec));
      const NmReport rep = compute_report(series, config.normalize_by_tcut);
      const AsymptoticFidelity asym = asymptotic_fidelity(series, config.tail_window_fraction);
      SweepRow& r = sample[i];
      r.ipr = scorer(psi).value;
      r.blp = rep.blp;
      r.rhp = rep.rhp;
      r.nd_max = rep.nd_max;
      r.nd_avg = rep.nd_avg;
      r.ng_max = rep.ng_max;
      r.ng_avg = rep.ng_avg;
      r.f_asym = asym.mean_F2;
      r.f_amp_asym = asym.mean_F;
      r.clamp_events = rep.clamp_events;
    });
    for (std::size_t i = 0; i < points.size(); ++i) {
      SweepRow& r = rows[i];
      const SweepRow& s = sample[i];
      r.ipr += s.ipr;
      r.blp += s.blp;
      r.rhp += s.rhp;
      r.nd_max += s.nd_max;
      r.nd_avg += s.nd_avg;
      r.ng_max += s.ng_max;
      r.ng_avg += s.ng_avg;
      r.f_asym += s.f_asym;
      r.f_amp_asym += s.f_amp_asym;
      r.clamp_events += s.clamp_events;
    }
  }
  if (samples > 1) {
    const double inv = 1.0 / samples;
    for (SweepRow& r : rows) {
      for (double* v : {&r.ipr, &r.blp, &r.rhp, &r.nd_max, &r.nd_avg, &r.ng_max, &r.ng_avg,
                        &r.f_asym, &r.f_amp_asym}) {
        *v *= inv;
      }
    }
  }
  const double rhp_scale = config.normalize_by_tcut ? config.t_cut : 1.0;
  for (const SweepRow& r : rows) check_row(r, rhp_scale);
  return rows;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << "theta,phi,hemisphere,ipr,blp,rhp,nd_max,nd_avg,ng_max,ng_avg,f_asym,f_amp_asym,"
         "clamp_events\n";
  char line[512];
  for (const SweepRow& r : rows) {
    std::snprintf(line, sizeof line,
                  "%.10g,%.10g,%c,%.10g,%.10g,%.10g,%.10g,%.10g,%.10g,%.10g,%.10g,%.10g,%ld\n",
                  r.theta, r.phi, to_char(r.hemisphere), r.ipr, r.blp, r.rhp, r.nd_max, r.nd_avg,
                  r.ng_max, r.ng_avg, r.f_asym, r.f_amp_asym, r.clamp_events);
    out << line;
  }
}

SpectralReport run_spectral(const RunConfig& config) {
  config.validate();
  const ChainParams chain = effective_chain(config);
  if (config.eigen_operator == EigenOperator::Unperturbed) {
    return spacing_statistics(build_unperturbed(chain), chain.n_qubits);
  }
  const FloquetPair pair = build_floquet_pair(chain);
  return spacing_statistics(pair.plus, chain.n_qubits);
}

void write_spectral_summary(std::ostream& out, const SpectralReport& r) {
  out << "sectors =";
  for (int k : r.sectors_used) out << ' ' << k;
  out << "\nspacings = " << r.spacings.size() << '\n'
      << "brody_q = " << fmt("%.10g", r.brody_q) << '\n'
      << "brody_loglik = " << fmt("%.10g", r.brody_loglik) << '\n'
      << "ks_poisson = " << fmt("%.10g", r.ks_poisson) << '\n'
      << "ks_wigner = " << fmt("%.10g", r.ks_wigner) << '\n'
      << "ks_brody = " << fmt("%.10g", r.ks_brody) << '\n'
      << "degenerate = " << (r.degenerate ? "true" : "false") << '\n';
}

FidelitySeries run_series(const RunConfig& config, const CoherentSpec& spec) {
  config.validate();
  const ChainParams chain = effective_chain(config);
  RngStream rng(config.seed, 0);
  const FloquetPair pair = build_floquet_pair(chain, rng);
  return fidelity_series(pair, build_coherent_state(spec, chain.n_qubits), config.t_cut,
                         fingerprint(chain, spec));
}

std::vector<SaturationRow> run_saturation(const RunConfig& config, const CoherentSpec& spec,
                                          const std::vector<int>& checkpoints) {
  config.validate();
  if (checkpoints.empty()) throw ConfigError("saturate: no checkpoints given");
  for (std::size_t i = 0; i < checkpoints.size(); ++i) {
    if (checkpoints[i] < 1 || (i > 0 && checkpoints[i] <= checkpoints[i - 1])) {
      throw ConfigError("saturate: checkpoints must be positive and strictly ascending");
    }
  }
  const ChainParams chain = effective_chain(config);
  const ComplexVector psi = build_coherent_state(spec, chain.n_qubits);
  std::vector<SaturationRow> rows(checkpoints.size());
  for (std::size_t i = 0; i < rows.size(); ++i) rows[i].t_cut = checkpoints[i];

  for (int m = 0; m < config.gue_samples; ++m) {
    RngStream rng(config.seed, static_cast<std::uint64_t>(m));
    const FloquetPair pair = build_floquet_pair(chain, rng);
    const std::vector<double> amps =
        fidelity_series(pair, psi, checkpoints.back(), fingerprint(chain, spec)).amplitudes();
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const int t = checkpoints[i];
      const NmReport rep = compute_report(std::span(amps).first(t + 1), false);
      SaturationRow& r = rows[i];
      r.blp += rep.blp;
      r.rhp += rep.rhp;
      r.blp_norm += rep.blp / t;
      r.rhp_norm += rep.rhp / t;
      r.nd_max += rep.nd_max;
      r.nd_avg += rep.nd_avg;
      r.ng_max += rep.ng_max;
      r.ng_avg += rep.ng_avg;
    }
  }
  if (config.gue_samples > 1) {
    const double inv = 1.0 / config.gue_samples;
    for (SaturationRow& r : rows) {
      for (double* v : {&r.blp, &r.rhp, &r.blp_norm, &r.rhp_norm, &r.nd_max, &r.nd_avg, &r.ng_max,
                        &r.ng_avg}) {
        *v *= inv;
      }
    }
  }
  return rows;
}

void write_saturation_csv(std::ostream& out, const std::vector<SaturationRow>& rows) {
  out << "t_cut,blp,rhp,blp_norm,rhp_norm,nd_max,nd_avg,ng_max,ng_avg\n";
  char line[384];
  for (const SaturationRow& r : rows) {
    std::snprintf(line, sizeof line, "%d,%.10g,%.10g,%.10g,%.10g,%.10g,%.10g,%.10g,%.10g\n",
                  r.t_cut, r.blp, r.rhp, r.blp_norm, r.rhp_norm, r.nd_max, r.nd_avg, r.ng_max,
                  r.ng_avg);
    out << line;
  }
}

}  // namespace nmloc
