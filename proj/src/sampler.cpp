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

#include "qdenoise/sampler.hpp"

#include <cmath>
#include <string>

#include "qdenoise/channels.hpp"
#include "qdenoise/kernels.hpp"
#include "qdenoise/pauli.hpp"

namespace qdenoise::sampler {

namespace {

int sign_of(double x) { return x < 0.0 ? -1 : 1; }

double unit_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

QuasiDistribution QuasiDistribution::from(const DenoiserSpec& spec) {
  spec.validate();
  QuasiDistribution dist;
  for (size_t h = 0; h < spec.layers.size(); ++h) {
    const auto& params = spec.layers[h];
    const double g = channels::gamma_of(params);
    for (int site : circuits::half_layer_sites(spec.L, static_cast<int>(h % 2))) {
      GateBranches b;
      b.gamma = g;
      b.p0 = std::abs(params.eta0()) / g;
      b.sign0 = sign_of(params.eta0());
      b.sign1 = sign_of(params.eta1);
      b.layer = static_cast<int>(h);
      b.site = site;
      dist.gamma *= g;
      dist.gates.push_back(b);
    }
  }
  return dist;
}

std::uint64_t hoeffding_samples(double gamma, double delta, double omega) {
  if (!(gamma >= 1.0) || !std::isfinite(gamma)) {
    throw InvalidArgument("hoeffding_samples: gamma must be >= 1");
  }
  if (!(delta > 0.0)) throw InvalidArgument("hoeffding_samples: delta must be > 0");
  if (!(omega > 0.0 && omega < 1.0)) {
    throw InvalidArgument("hoeffding_samples: omega must lie in (0, 1)");
  }
  const double n = std::ceil(2.0 * gamma * gamma / (delta * delta) *
                             std::log(2.0 / omega));
  if (n >= 0x1.0p63) throw InvalidArgument("hoeffding_samples: overflow");
  return static_cast<std::uint64_t>(n);
}

std::mt19937_64 shot_rng(std::uint64_t seed, std::uint64_t shot) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(shot),
                    static_cast<std::uint32_t>(shot >> 32)};
  return std::mt19937_64(seq);
}

ShotRecord sample_denoiser(const QuasiDistribution& dist, std::mt19937_64& rng) {
  ShotRecord rec;
  rec.branches.reserve(dist.gates.size());
  for (const auto& g : dist.gates) {
    const bool unitary = unit_uniform(rng) < g.p0;
    rec.branches.push_back(unitary ? 0 : 1);
    rec.sign *= unitary ? g.sign0 : g.sign1;
  }
  return rec;
}

ShotRecord sample_denoiser(const DenoiserSpec& spec, std::uint64_t rng_seed) {
  std::mt19937_64 rng(rng_seed);
  return sample_denoiser(QuasiDistribution::from(spec), rng);
}

namespace {

kernels::Placement bond_placement(int site, int num_sites) {
  const int sites[2] = {site, (site + 1) % num_sites};
  return kernels::Placement(kernels::superop_positions(sites, num_sites),
                            2 * num_sites);
}

// Local superoperators of the 15 non-identity two-qubit Pauli conjugations.
std::vector<Matrix> pauli_pair_superops() {
  std::vector<Matrix> out;
  for (int k = 1; k < 16; ++k) {
    out.push_back(pauli::unitary_superop(
        pauli::kron(pauli::pauli_matrix(k / 4), pauli::pauli_matrix(k % 4))));
  }
  return out;
}

struct Unraveler {
  std::vector<Matrix> paulis = pauli_pair_superops();

  void apply(double p, const kernels::Placement& placement,
             std::mt19937_64& rng, Vector& v) const {
    if (p <= 0.0) return;
    const double u = unit_uniform(rng);
    if (u >= p) return;
    const int k = std::min(14, static_cast<int>(u / p * 15.0));
    kernels::apply_vector(paulis[k], placement, v);
  }
};

}  // namespace

EstimatorResult run_shots(const GateList& trotter, const DenoiserSpec& spec,
                          const observables::Observable& observable,
                          const VectorizedOperator& initial_state,
                          const ShotOptions& options) {
  if (options.n_shots == 0) throw InvalidArgument("run_shots: empty budget");
  if (options.n_shots > options.max_shots) {
    throw InvalidArgument("run_shots: budget exceeded (" +
                          std::to_string(options.n_shots) + " > " +
                          std::to_string(options.max_shots) + ")");
  }
  const QubitCount L = spec.L;
  if (initial_state.size() != L.superop_dim() ||
      observable.dim() != L.superop_dim()) {
    throw InvalidArgument("run_shots: state/observable size does not match L");
  }
  const QuasiDistribution dist = QuasiDistribution::from(spec);

  // Per-layer branch superoperators; without unraveling they include noise.
  const channels::NoiseModel branch_noise =
      options.pauli_unraveling ? channels::NoiseModel(0.0) : spec.noise;
  std::vector<std::array<Matrix, 2>> branch(spec.layers.size());
  for (size_t h = 0; h < spec.layers.size(); ++h) {
    branch[h][0] = channels::unitary_branch_local(spec.layers[h], branch_noise);
    branch[h][1] =
        channels::measurement_branch_local(spec.layers[h], branch_noise);
  }
  std::vector<kernels::Placement> gate_place;
  for (const auto& g : dist.gates) gate_place.push_back(bond_placement(g.site, L));

  const Unraveler unraveler;
  std::vector<kernels::Placement> trotter_place;
  VectorizedOperator base;
  if (options.pauli_unraveling) {
    for (const auto& g : trotter) {
      if (g.arity != 2) {
        throw InvalidArgument("run_shots: unraveling needs two-site gates");
      }
      trotter_place.push_back(bond_placement(g.site, L));
    }
  } else {
    base = circuits::apply(trotter, initial_state, L);
  }

  EstimatorResult result;
  result.gamma = dist.gamma;
  result.n_shots = options.n_shots;
  result.hoeffding_bound =
      hoeffding_samples(dist.gamma, options.delta, options.omega);

  double mean = 0.0, m2 = 0.0;
  for (std::uint64_t s = 0; s < options.n_shots; ++s) {
    std::mt19937_64 rng = shot_rng(options.seed, s);
    ShotRecord rec = sample_denoiser(dist, rng);
    VectorizedOperator v;
    if (options.pauli_unraveling) {
      v = initial_state;
      for (size_t k = 0; k < trotter.size(); ++k) {
        kernels::apply_vector(trotter[k].superop, trotter_place[k], v);
        unraveler.apply(options.trotter_noise.p(), trotter_place[k], rng, v);
      }
    } else {
      v = base;
    }
    for (size_t k = 0; k < dist.gates.size(); ++k) {
      kernels::apply_vector(branch[dist.gates[k].layer][rec.branches[k]],
                            gate_place[k], v);
      if (options.pauli_unraveling) {
        unraveler.apply(spec.noise.p(), gate_place[k], rng, v);
      }
    }
    const Complex o = observable.expectation(v);
    if (!std::isfinite(o.real()) || !std::isfinite(o.imag())) {
      throw NumericalError("run_shots: non-finite observable at shot " +
                           std::to_string(s));
    }
    rec.value = o.real();
    const double x = dist.gamma * rec.sign * rec.value;
    if (options.telemetry) {
      *options.telemetry << s << ',' << rec.sign << ',' << rec.value << '\n';
    }
    const double delta = x - mean;
    mean += delta / static_cast<double>(s + 1);
    m2 += delta * (x - mean);
  }
  result.mean = mean;
  const double n = static_cast<double>(options.n_shots);
  result.standard_error =
      options.n_shots > 1 ? std::sqrt(m2 / (n - 1.0)) / std::sqrt(n) : 0.0;
  return result;
}

DenseSuperoperator branch_expansion(const DenoiserSpec& spec) {
  const QubitCount L = spec.L;
  if (L > circuits::kMaxDenseSites) {
    throw InvalidArgument("branch_expansion: dense limit exceeded");
  }
  const QuasiDistribution dist = QuasiDistribution::from(spec);
  const size_t n = dist.gates.size();
  if (n > 20) throw InvalidArgument("branch_expansion: too many gates to enumerate");
  std::vector<std::array<Matrix, 2>> branch(spec.layers.size());
  for (size_t h = 0; h < spec.layers.size(); ++h) {
    branch[h][0] = channels::unitary_branch_local(spec.layers[h], spec.noise);
    branch[h][1] = channels::measurement_branch_local(spec.layers[h], spec.noise);
  }
  DenseSuperoperator total =
      DenseSuperoperator::Zero(L.superop_dim(), L.superop_dim());
  for (std::uint64_t mask = 0; mask < (1ULL << n); ++mask) {
    double prob = 1.0;
    int sign = 1;
    GateList realization;
    for (size_t k = 0; k < n; ++k) {
      const auto& g = dist.gates[k];
      const int b = (mask >> k) & 1;
      prob *= b ? g.p1() : g.p0;
      sign *= b ? g.sign1 : g.sign0;
      realization.push_back(circuits::Gate{branch[g.layer][b], g.site, 2, g.layer});
    }
    if (prob == 0.0) continue;
    total += (dist.gamma * sign * prob) * circuits::compose(realization, L);
  }
  return total;
}

}  // namespace qdenoise::sampler
