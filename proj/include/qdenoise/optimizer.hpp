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

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "qdenoise/objective.hpp"

namespace qdenoise::optimizer {

struct OptimizerConfig {
  int max_iters = 2000;
  double learning_rate = 0.01;
  std::array<double, 2> adam_betas{0.9, 0.999};
  double adam_epsilon = 1e-8;
  double grad_tolerance = 1e-8;
  std::uint64_t seed = 0;
  double init_eta1 = 0.01;
  double init_angle_scale = 0.01;
  int restarts = 1;
  // Weight of sum_h gamma_h added to the cost; 0 disables the penalty.
  double gamma_penalty = 0.0;
  // Called as progress(restart, iteration, epsilon) every `progress_every`
  // iterations when both are set.
  std::function<void(int, int, double)> progress;
  int progress_every = 0;

  void validate() const;
};

struct OptimizationReport {
  double final_epsilon = 0.0;  // best epsilon seen
  double initial_epsilon = 0.0;
  std::vector<double> epsilon_trace{};  // epsilon at every evaluated iterate
  std::vector<double> best_epsilon_trace{};
  std::vector<double> grad_norm_trace{};
  double wall_time = 0.0;  // seconds
  int iterations = 0;
  bool converged = false;
  int best_restart = 0;
  DenoiserSpec best_params;
};

/// Angles uniform in [-init_angle_scale, init_angle_scale], eta1 = init_eta1.
DenoiserSpec random_initial_denoiser(QubitCount L, int depth,
                                     channels::NoiseModel noise,
                                     const OptimizerConfig& config,
                                     std::uint64_t seed);

/// Adam descent on the flat parameters. The first restart starts from
/// `init` when given; restart r otherwise draws from seed + r. Returns the
/// best iterate over all restarts; traces belong to the best restart.
OptimizationReport optimize(const DenoisingObjective& objective, int depth,
                            channels::NoiseModel noise,
                            const OptimizerConfig& config,
                            const std::optional<DenoiserSpec>& init = {});

/// Parameters of a denoiser reinterpreted on a lattice of another size.
/// Translation invariance makes the parameter set size independent.
DenoiserSpec transfer(const DenoiserSpec& denoiser, QubitCount L);

}  // namespace qdenoise::optimizer
