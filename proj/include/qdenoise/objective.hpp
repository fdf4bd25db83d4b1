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

#include <vector>

#include "qdenoise/circuits.hpp"
#include "qdenoise/types.hpp"

// The denoising cost
//
//   epsilon = || C - D~ C~ ||_F^2 / 4^L
//
// between the noiseless supercircuit C and the denoised noisy supercircuit,
// together with its exact gradient by reverse accumulation through the gate
// sequence of the denoiser.

namespace qdenoise::optimizer {

using circuits::DenoiserSpec;
using circuits::GateList;
using circuits::TrotterSpec;

/// Subset of basis columns with multiplicities such that
/// ||A||_F^2 = sum_k weight_k * ||A e_{column_k}||^2 for every A in the
/// symmetry class the subset was built for.
struct ColumnSet {
  std::vector<long> columns;
  RealVector weights;
};

ColumnSet all_columns(QubitCount L);

/// One representative per orbit of the basis of vectorized operators under
/// translation by two sites, reflection about the centre of bond (0, 1), and
/// rho -> rho^dagger. Exact for brickwall circuits of swap-symmetric,
/// Hermiticity-preserving gates with one gate type per half layer.
ColumnSet symmetric_column_orbits(QubitCount L);

class DenoisingObjective {
 public:
  /// Every column of a dense target and the given noisy circuit.
  DenoisingObjective(const DenseSuperoperator& target, const GateList& noisy,
                     QubitCount L);

  /// Explicit column subset; `target_columns` holds C e_k for each k.
  DenoisingObjective(Matrix target_columns, const GateList& noisy,
                     ColumnSet columns, QubitCount L);

  /// Noiseless versus noisy Trotter supercircuit. With `use_symmetry` only
  /// one column per symmetry orbit is propagated.
  static DenoisingObjective for_trotter(const TrotterSpec& spec,
                                        bool use_symmetry = true);

  QubitCount L() const { return L_; }
  long num_columns() const { return static_cast<long>(columns_.columns.size()); }

  double epsilon(const DenoiserSpec& denoiser) const;

  /// Fills `gradient` (resized to denoiser.num_params()) in the flat layout
  /// of DenoiserSpec::flat_params and returns epsilon.
  double epsilon_and_gradient(const DenoiserSpec& denoiser,
                              std::vector<double>& gradient) const;

  /// Cost with no denoiser applied.
  double baseline() const;

 private:
  void check(const DenoiserSpec& denoiser) const;
  double weighted_norm(const Matrix& residual) const;

  QubitCount L_;
  ColumnSet columns_;
  Matrix target_;
  Matrix noisy_;
};

/// Dense route: ||target - compose(denoiser) compose(noisy)||^2 / 4^L.
double epsilon(const DenseSuperoperator& target, const DenoiserSpec& denoiser,
               const GateList& noisy_circuit);

std::vector<double> epsilon_gradient(const DenoiserSpec& denoiser,
                                     const DenoisingObjective& objective);

}  // namespace qdenoise::optimizer
