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

#include "qdenoise/types.hpp"

// Spectra of supercircuits and entropies of their normalized Choi states.

namespace qdenoise::analysis {

struct SpectrumReport {
  std::vector<Complex> eigenvalues;  // sorted by modulus, descending
  double mean_unit_circle_deviation = 0.0;  // mean of ||lambda| - 1|
  double spectral_radius = 0.0;
};

SpectrumReport spectrum(const DenseSuperoperator& s);

struct UnitCircleComparison {
  double noisy_deviation = 0.0;
  double denoiser_deviation = 0.0;
  double denoised_deviation = 0.0;
  double denoiser_radius = 0.0;
  bool denoiser_outside_unit_circle = false;  // spectral radius > 1
  bool denoised_closer_than_noisy = false;
};

UnitCircleComparison unit_circle_metrics(const SpectrumReport& noisy,
                                         const SpectrumReport& denoiser,
                                         const SpectrumReport& denoised);

struct EntropyReport {
  double full_choi_entropy = 0.0;   // nats
  double half_chain_entropy = 0.0;  // nats
  double min_eigenvalue = 0.0;      // of the normalized Choi state
  double clipped_weight = 0.0;      // sum of |negative eigenvalues|, full state
  bool positive_semidefinite = true;  // min eigenvalue >= -1e-8
};

/// Negative Choi eigenvalues below this are reported as non-physical.
inline constexpr double kPsdTolerance = 1e-8;

/// -Tr(psi ln psi) of the unit-trace Choi state, and of its reduction to the
/// input and output legs of the first `cut` sites. `cut` < 0 selects L / 2.
EntropyReport channel_entropy(const DenseSuperoperator& s, int cut = -1);

/// Entropy of a unit-trace spectrum after clipping negative eigenvalues to
/// zero and renormalizing the rest to unit sum. The dropped weight is added
/// to `clipped`.
double clipped_entropy(const RealVector& eigenvalues, double* clipped = nullptr);

/// Reduced Choi state on the legs of sites [0, cut).
Matrix reduce_choi(const Matrix& choi, int num_sites, int cut);

}  // namespace qdenoise::analysis
