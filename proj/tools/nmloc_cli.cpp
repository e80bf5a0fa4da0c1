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

// nmloc: kicked-Ising dephasing experiments from the command line.
//
//   nmloc sweep <config>
//   nmloc spectral <config>
//   nmloc saturate <config> --theta T --phi P --checkpoints 1000,5000,10000
//   nmloc series <config> --theta T --phi P

#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "nmloc/error.hpp"
#include "nmloc/sweep.hpp"

namespace {

// Opens config.output_path, or stdout for "-".
class Output {
 public:
  explicit Output(const std::string& path) {
    if (path != "-") {
      file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
      if (!*file_) throw nmloc::ConfigError("cannot open output file '" + path + "'");
    }
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }
  bool is_file() const { return file_ != nullptr; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Non-Markovianity and localization in the kicked Ising chain"};
  app.require_subcommand(1);

  std::string config_path;
  double theta = 0.0;
  double phi = 0.0;
  std::vector<int> checkpoints;

  auto* sweep = app.add_subcommand("sweep", "Measures and IPR over a grid of coherent states");
  sweep->add_option("config", config_path, "Run configuration file")->required();

  auto* spectral = app.add_subcommand("spectral", "Eigenphase spacing statistics and Brody fit");
  spectral->add_option("config", config_path, "Run configuration file")->required();

  auto* saturate = app.add_subcommand("saturate", "Measures as a function of the cutoff time");
  saturate->add_option("config", config_path, "Run configuration file")->required();
  saturate->add_option("--theta", theta, "Polar angle of the initial state")->required();
  saturate->add_option("--phi", phi, "Azimuth of the initial state")->required();
  saturate->add_option("--checkpoints", checkpoints, "Ascending cutoff times")
      ->required()
      ->delimiter(',');

  auto* series = app.add_subcommand("series", "Dump the fidelity amplitude f(t)");
  series->add_option("config", config_path, "Run configuration file")->required();
  series->add_option("--theta", theta, "Polar angle of the initial state")->required();
  series->add_option("--phi", phi, "Azimuth of the initial state")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    const nmloc::RunConfig config = nmloc::load_config(config_path);
    Output out(config.output_path);
    if (*sweep) {
      const auto rows = nmloc::run_sweep(config);
      nmloc::write_sweep_csv(out.stream(), rows);
      if (out.is_file()) {
        std::ofstream meta(config.output_path + ".meta", std::ios::binary);
        meta << nmloc::format_config(config);
      }
    } else if (*spectral) {
      const auto report = nmloc::run_spectral(config);
      nmloc::write_histogram(out.stream(), report.spacings);
      nmloc::write_spectral_summary(out.is_file() ? std::cout : std::cerr, report);
    } else if (*saturate) {
      const auto rows = nmloc::run_saturation(config, nmloc::CoherentSpec{theta, phi}, checkpoints);
      nmloc::write_saturation_csv(out.stream(), rows);
    } else if (*series) {
      nmloc::write_series(out.stream(), nmloc::run_series(config, nmloc::CoherentSpec{theta, phi}));
    }
    out.stream().flush();
    if (!out.stream()) throw nmloc::Error("write to output failed");
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
