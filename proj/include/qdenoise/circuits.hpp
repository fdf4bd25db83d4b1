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
#include <span>
#include <vector>

#include "qdenoise/channels.hpp"
#include "qdenoise/types.hpp"

// Brickwall supercircuits: second-order Trotter circuits of the periodic
// Heisenberg chain and denoiser circuits built from the channel ansatz.
//
// Even half layers act on bonds (0,1), (2,3), ...; odd half layers on
// (1,2), ..., (L-1,0). A gate list is applied in list order.

namespace qdenoise::circuits {

using channels::ChannelParams;
using channels::NoiseModel;

/// Bond coupling H_bond = Jx XX + Jy YY + Jz ZZ.
struct Couplings {
  double jx = 1.0;
  double jy = 1.0;
  double jz = 1.0;
};

struct TrotterSpec {
  QubitCount L;
  double t = 0.0;
  int m_trot = 1;
  NoiseModel noise;
  Couplings couplings;

  void validate() const;
};

struct DenoiserSpec {
  QubitCount L;
  int depth = 0;  // M; zero means "no denoiser"
  std::vector<ChannelParams> layers;  // one per half layer, 2M in total
  NoiseModel noise;

  void validate() const;

  /// Every layer at identity parameters.
  static DenoiserSpec identity(QubitCount L, int depth, NoiseModel noise);

  std::vector<double> flat_params() const;
  void set_flat_params(std::span<const double> values);
  int num_params() const { return 2 * depth * ChannelParams::kNumParams; }
};

struct Gate {
  Matrix superop;  // local row-major superoperator, 4^arity x 4^arity
  int site = 0;    // acts on site, site + 1, ... (mod L)
  int arity = 2;
  int layer = -1;  // half-layer index within the circuit that built it

  std::vector<int> sites(int num_sites) const;
};

using GateList = std::vector<Gate>;

/// Largest L for which full 4^L x 4^L matrices are materialized.
inline constexpr int kMaxDenseSites = 6;

DenseOperator bond_hamiltonian(const Couplings& couplings);
DenseOperator heisenberg_hamiltonian(QubitCount L, const Couplings& couplings);

/// exp(-i H t) by Hermitian eigendecomposition.
DenseOperator exact_propagator(QubitCount L, const Couplings& couplings,
                               double t);

/// exp(-i dt H_bond).
DenseOperator bond_gate(const Couplings& couplings, double dt);

/// First site of every bond in the given half layer (0 = even, 1 = odd).
std::vector<int> half_layer_sites(QubitCount L, int parity);

/// Time step of half layer k in an m_trot circuit: end layers t/m_trot,
/// interior layers 2t/m_trot, so both sublattices evolve for total time t.
double trotter_layer_step(const TrotterSpec& spec, int k);

/// m_trot + 1 alternating half layers starting on the even bonds. When
/// `noisy`, each gate is followed by two-qubit depolarizing noise.
GateList build_trotter(const TrotterSpec& spec, bool noisy);

/// The noiseless Trotter circuit as a 2^L x 2^L unitary.
DenseOperator trotter_unitary(const TrotterSpec& spec);

/// M brickwall layers (even then odd half layer); every gate in a half layer
/// shares one ChannelParams.
GateList build_denoiser(const DenoiserSpec& spec);

/// Ordered product of the embedded gates, later gates on the left.
DenseSuperoperator compose(const GateList& gates, QubitCount L);

/// Gate-by-gate application to a vectorized operator.
VectorizedOperator apply(const GateList& gates, const VectorizedOperator& v,
                         QubitCount L);

/// Gate-by-gate application to every column of a 4^L-row block, in place.
void apply_columns(const GateList& gates, Matrix& block, QubitCount L);

/// n copies of the list, concatenated.
GateList stack(const GateList& gates, int n);

/// `first` followed by `second`.
GateList concat(const GateList& first, const GateList& second);

}  // namespace qdenoise::circuits
