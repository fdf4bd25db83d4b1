// Copyright 2026 The qdenoise Authors
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

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qdenoise/circuits.hpp"
#include "qdenoise/optimizer.hpp"

// Configuration-driven front end: JSON run configs, denoiser parameter
// files, and the optimize / evaluate / sample / analyze / sweep commands.
//
// Sites in configs are 1-based; they are converted to 0-based on parsing.

namespace qdenoise::cli {

inline constexpr int kSchemaVersion = 1;

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumerical = 3;

const char* version();

struct TaskSpec {
  std::string kind;  // two_point_zz, otoc, domain_wall, stacking, spectrum,
                     // entropy, sample
  int i = 0;         // 0-based
  int j = 0;
  std::vector<double> times;  // empty: the config's evolution times
  std::vector<int> n_stack{1};
  std::uint64_t shots = 0;
  double delta = 0.05;
  double omega = 0.1;
  bool unravel = false;
};

struct RunConfig {
  int L = 0;
  circuits::Couplings couplings;
  std::vector<double> times;  // evolution times; the first is the default
  int m_trot = 1;
  double p = 0.0;

  int depth = 1;                  // denoiser M
  std::string init = "random";    // random | identity
  std::vector<std::string> load;  // denoiser files for evaluate/sample
  bool allow_transfer = false;    // accept denoisers optimized at another L
  bool backward = false;          // also optimize denoisers for -t
  bool symmetry = true;           // symmetry-reduced cost columns

  optimizer::OptimizerConfig optimizer;
  std::vector<TaskSpec> tasks;
  std::vector<double> sweep_p;
  std::string output = "out";
  std::uint64_t seed = 0;

  nlohmann::json echo;  // the parsed config, as given

  circuits::TrotterSpec trotter(double t, std::optional<int> L = {}) const;
};

/// Throws ConfigError naming the offending field.
RunConfig parse_config(const nlohmann::json& config);
RunConfig load_config(const std::filesystem::path& path);

/// FNV-1a 64 hash of the canonical text of a Trotter circuit definition.
std::string fingerprint(const circuits::TrotterSpec& spec);

nlohmann::json channel_to_json(const channels::ChannelParams& params);
channels::ChannelParams channel_from_json(const nlohmann::json& j);

struct DenoiserFile {
  circuits::DenoiserSpec spec;
  std::string fingerprint;
  double t = 0.0;
  int m_trot = 1;
};

nlohmann::json denoiser_to_json(const circuits::DenoiserSpec& spec,
                                const circuits::TrotterSpec& target);
DenoiserFile denoiser_from_json(const nlohmann::json& j);
DenoiserFile load_denoiser(const std::filesystem::path& path);

struct CommandOptions {
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::vector<std::string> denoisers;
  std::optional<std::uint64_t> shots;
};

int cmd_optimize(RunConfig config, const CommandOptions& options);
int cmd_evaluate(RunConfig config, const CommandOptions& options);
int cmd_sample(RunConfig config, const CommandOptions& options);
int cmd_analyze(RunConfig config, const CommandOptions& options);
int cmd_sweep(RunConfig config, const CommandOptions& options);

/// Parses the command line, dispatches, and maps exceptions to exit codes.
int run(int argc, char** argv);

}  // namespace qdenoise::cli
