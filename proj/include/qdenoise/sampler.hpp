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
#include <ostream>
#include <random>
#include <vector>

#include "qdenoise/circuits.hpp"
#include "qdenoise/observables.hpp"

// The denoiser read as a quasiprobability ensemble: every gate picks its
// unitary branch with probability |eta0| / gamma_g and its measurement branch
// otherwise, and each realization carries the product of the chosen signs.

namespace qdenoise::sampler {

using circuits::DenoiserSpec;
using circuits::GateList;

struct GateBranches {
  double p0 = 1.0;  // probability of the unitary branch
  double gamma = 1.0;
  int sign0 = 1;  // sgn(eta0)
  int sign1 = 1;  // sgn(eta1)
  int layer = 0;
  int site = 0;

  double p1() const { return 1.0 - p0; }
};

struct QuasiDistribution {
  std::vector<GateBranches> gates;  // in denoiser gate order
  double gamma = 1.0;               // product of per-gate gamma

  static QuasiDistribution from(const DenoiserSpec& spec);
};

/// ceil((2 gamma^2 / delta^2) ln(2 / omega)).
std::uint64_t hoeffding_samples(double gamma, double delta, double omega);

struct ShotRecord {
  std::vector<std::uint8_t> branches;  // 0 = unitary, 1 = measurement
  int sign = 1;
  double value = 0.0;
};

/// Deterministic generator for shot `shot` of a run seeded with `seed`.
std::mt19937_64 shot_rng(std::uint64_t seed, std::uint64_t shot);

ShotRecord sample_denoiser(const QuasiDistribution& dist, std::mt19937_64& rng);
ShotRecord sample_denoiser(const DenoiserSpec& spec, std::uint64_t rng_seed);

struct ShotOptions {
  std::uint64_t n_shots = 0;
  std::uint64_t seed = 0;
  std::uint64_t max_shots = 100'000'000;
  double delta = 0.01;  // Hoeffding accuracy reported alongside the estimate
  double omega = 0.05;  // Hoeffding failure probability
  // Sample Pauli trajectories of the depolarizing noise instead of applying
  // it as a channel. The Trotter list must then be noiseless, and its noise
  // is given by `trotter_noise`.
  bool pauli_unraveling = false;
  channels::NoiseModel trotter_noise;
  std::ostream* telemetry = nullptr;  // "shot,sign,value" lines when set
};

struct EstimatorResult {
  double mean = 0.0;
  double standard_error = 0.0;  // sample standard deviation / sqrt(n)
  std::uint64_t n_shots = 0;
  double gamma = 1.0;
  std::uint64_t hoeffding_bound = 0;
};

/// gamma * sign * Tr(O D_r C~ rho0) averaged over sampled realizations r.
EstimatorResult run_shots(const GateList& trotter, const DenoiserSpec& spec,
                          const observables::Observable& observable,
                          const VectorizedOperator& initial_state,
                          const ShotOptions& options);

/// sum over all branch assignments of gamma * sign * probability * branch
/// supercircuit; equals the composed denoiser.
DenseSuperoperator branch_expansion(const DenoiserSpec& spec);

}  // namespace qdenoise::sampler
