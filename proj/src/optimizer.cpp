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

#include "qdenoise/optimizer.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <random>
#include <string>

namespace qdenoise::optimizer {

void OptimizerConfig::validate() const {
  if (max_iters < 0) throw InvalidArgument("optimizer: max_iters must be >= 0");
  if (!(learning_rate > 0.0)) {
    throw InvalidArgument("optimizer: learning_rate must be > 0");
  }
  for (double b : adam_betas) {
    if (!(b >= 0.0 && b < 1.0)) {
      throw InvalidArgument("optimizer: adam betas must lie in [0, 1)");
    }
  }
  if (!(adam_epsilon > 0.0)) {
    throw InvalidArgument("optimizer: adam_epsilon must be > 0");
  }
  if (grad_tolerance < 0.0) {
    throw InvalidArgument("optimizer: grad_tolerance must be >= 0");
  }
  if (init_angle_scale < 0.0) {
    throw InvalidArgument("optimizer: init_angle_scale must be >= 0");
  }
  if (restarts < 1) throw InvalidArgument("optimizer: restarts must be >= 1");
  if (gamma_penalty < 0.0) {
    throw InvalidArgument("optimizer: gamma_penalty must be >= 0");
  }
}

namespace {

// Uniform double in [0, 1) from the top 53 bits; fixed across standard
// library implementations, unlike std::uniform_real_distribution.
double unit_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double sign(double x) { return (x > 0.0) - (x < 0.0); }

}  // namespace

DenoiserSpec random_initial_denoiser(QubitCount L, int depth,
                                     channels::NoiseModel noise,
                                     const OptimizerConfig& config,
                                     std::uint64_t seed) {
  DenoiserSpec spec = DenoiserSpec::identity(L, depth, noise);
  std::mt19937_64 rng(seed);
  std::vector<double> flat = spec.flat_params();
  constexpr int n = channels::ChannelParams::kNumParams;
  for (size_t k = 0; k < flat.size(); ++k) {
    if (k % n == 0) {
      flat[k] = config.init_eta1;
    } else {
      flat[k] = config.init_angle_scale * (2.0 * unit_uniform(rng) - 1.0);
    }
  }
  spec.set_flat_params(flat);
  return spec;
}

namespace {

struct RunResult {
  double best = std::numeric_limits<double>::infinity();
  std::vector<double> best_flat;
  std::vector<double> trace, best_trace, grad_trace;
  int iterations = 0;
  bool converged = false;
};

RunResult adam_run(const DenoisingObjective& objective, DenoiserSpec spec,
                   const OptimizerConfig& config, int restart) {
  constexpr int n = channels::ChannelParams::kNumParams;
  RunResult run;
  std::vector<double> x = spec.flat_params();
  std::vector<double> m(x.size(), 0.0), v(x.size(), 0.0), g;
  const double b1 = config.adam_betas[0], b2 = config.adam_betas[1];
  double b1t = 1.0, b2t = 1.0;

  for (int it = 0; it <= config.max_iters; ++it) {
    spec.set_flat_params(x);
    for (const auto& layer : spec.layers) {
      if (std::abs(layer.eta0() + layer.eta1 - 1.0) > 1e-15) {
        throw NumericalError("optimizer: eta0 + eta1 drifted from 1 at iteration " +
                             std::to_string(it));
      }
    }
    const double eps = objective.epsilon_and_gradient(spec, g);
    if (!std::isfinite(eps)) {
      throw NumericalError("optimizer: non-finite epsilon at iteration " +
                           std::to_string(it));
    }
    if (config.gamma_penalty > 0.0) {
      for (size_t h = 0; h < spec.layers.size(); ++h) {
        const double eta1 = spec.layers[h].eta1;
        g[h * n] += config.gamma_penalty * (sign(eta1) - sign(1.0 - eta1));
      }
    }
    double gnorm = 0.0;
    for (double gi : g) {
      if (!std::isfinite(gi)) {
        throw NumericalError("optimizer: non-finite gradient at iteration " +
                             std::to_string(it));
      }
      gnorm += gi * gi;
    }
    gnorm = std::sqrt(gnorm);

    run.trace.push_back(eps);
    run.grad_trace.push_back(gnorm);
    if (eps < run.best) {
      run.best = eps;
      run.best_flat = x;
    }
    run.best_trace.push_back(run.best);
    run.iterations = it;
    if (config.progress && config.progress_every > 0 &&
        it % config.progress_every == 0) {
      config.progress(restart, it, eps);
    }
    if (gnorm < config.grad_tolerance) {
      run.converged = true;
      break;
    }
    if (it == config.max_iters) break;

    b1t *= b1;
    b2t *= b2;
    for (size_t k = 0; k < x.size(); ++k) {
      m[k] = b1 * m[k] + (1.0 - b1) * g[k];
      v[k] = b2 * v[k] + (1.0 - b2) * g[k] * g[k];
      const double mhat = m[k] / (1.0 - b1t);
      const double vhat = v[k] / (1.0 - b2t);
      x[k] -= config.learning_rate * mhat / (std::sqrt(vhat) + config.adam_epsilon);
    }
  }
  return run;
}

}  // namespace

OptimizationReport optimize(const DenoisingObjective& objective, int depth,
                            channels::NoiseModel noise,
                            const OptimizerConfig& config,
                            const std::optional<DenoiserSpec>& init) {
  config.validate();
  const auto start = std::chrono::steady_clock::now();
  if (init) {
    if (init->depth != depth || init->L != objective.L()) {
      throw InvalidArgument("optimize: initial denoiser does not match depth/L");
    }
  }

  OptimizationReport report{
      .final_epsilon = std::numeric_limits<double>::infinity(),
      .best_params = DenoiserSpec::identity(objective.L(), depth, noise)};
  for (int r = 0; r < config.restarts; ++r) {
    DenoiserSpec start_spec =
        (r == 0 && init) ? *init
                         : random_initial_denoiser(objective.L(), depth, noise,
                                                   config, config.seed + r);
    start_spec.noise = noise;
    RunResult run = adam_run(objective, start_spec, config, r);
    if (r == 0 || run.best < report.final_epsilon) {
      report.final_epsilon = run.best;
      report.initial_epsilon = run.trace.front();
      report.epsilon_trace = std::move(run.trace);
      report.best_epsilon_trace = std::move(run.best_trace);
      report.grad_norm_trace = std::move(run.grad_trace);
      report.iterations = run.iterations;
      report.converged = run.converged;
      report.best_restart = r;
      report.best_params.set_flat_params(run.best_flat);
    }
  }
  report.wall_time = std::chrono::duration<double>(
                         std::chrono::steady_clock::now() - start)
                         .count();
  return report;
}

DenoiserSpec transfer(const DenoiserSpec& denoiser, QubitCount L) {
  denoiser.validate();
  DenoiserSpec out = denoiser;
  out.L = L;
  return out;
}

}  // namespace qdenoise::optimizer
