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

#include <span>
#include <vector>

#include "qdenoise/types.hpp"

// Kernels that apply a small local matrix to selected bits of a large index
// space without materializing the full embedding. Bit positions count from
// the most significant bit: position 0 has weight 2^(total_bits - 1).
//
// For superoperators on L sites the index is the 2L-bit vectorized index
// (row bits i_0..i_{L-1}, then column bits j_0..j_{L-1}); a gate on sites
// (a, b) therefore touches positions {a, b, L + a, L + b}.

namespace qdenoise::kernels {

class Placement {
 public:
  Placement(std::span<const int> positions, int total_bits);

  int local_dim() const { return static_cast<int>(offsets_.size()); }
  long full_dim() const { return 1L << total_bits_; }
  long num_bases() const { return full_dim() / local_dim(); }
  const std::vector<long>& offsets() const { return offsets_; }

  /// k-th index whose target bits are all zero, for k in [0, num_bases()).
  long base(long k) const {
    for (long w : sorted_weights_) {
      k = ((k & ~(w - 1)) << 1) | (k & (w - 1));
    }
    return k;
  }

 private:
  int total_bits_;
  std::vector<long> offsets_;
  std::vector<long> sorted_weights_;
};

/// Positions of a gate on the given sites inside the 2L-bit vectorized index.
std::vector<int> superop_positions(std::span<const int> sites, int num_sites);

/// target <- (local embedded) * target, acting on row indices.
void apply_rows(const Matrix& local, const Placement& placement,
                Matrix& target);

/// v <- (local embedded) * v.
void apply_vector(const Matrix& local, const Placement& placement, Vector& v);

/// Local environment E(a, b) = sum over bases and columns of
/// lambda(base + off[a], col) * conj(forward(base + off[b], col)).
///
/// With this E, Re<lambda, (dG embedded) forward> = Re sum_ab conj(E(a,b))
/// dG(a,b), the contraction needed for reverse accumulation.
Matrix environment(const Matrix& lambda, const Matrix& forward,
                   const Placement& placement);

}  // namespace qdenoise::kernels
