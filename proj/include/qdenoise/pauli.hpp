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

// Pauli algebra, the vectorization convention, dense superoperators and the
// Choi reshape.
//
// Conventions used throughout the library:
//   * Site 0 is the most significant bit of a computational basis index.
//   * rho(i, j) is stored at vectorized index i * 2^L + j, so the channel
//     rho -> G rho G^dagger has superoperator G (x) conj(G).
//   * (A (x) 1)|rho>> = vec(A rho) and <<1|(O (x) 1)|rho>> = Tr(O rho).

namespace qdenoise::pauli {

/// 1, sigma_x, sigma_y, sigma_z for alpha = 0..3.
DenseOperator pauli_matrix(int alpha);

DenseOperator identity(long dim);

Matrix kron(const Matrix& a, const Matrix& b);

/// Number of qubits n with dim == 2^n; throws if dim is not a power of two.
int qubits_for_dim(long dim);

/// Permutation operator moving the state of site q to site (q + shift) mod L.
DenseOperator cyclic_shift(int num_sites, int shift);

/// Embeds a k-qubit operator acting on sites site, site+1, ... (mod L) into an
/// L-qubit operator. Placements that wrap past the last site are obtained by
/// conjugating the site-0 embedding with a cyclic shift.
DenseOperator embed_local(const DenseOperator& op, int site, int num_sites);

/// G (x) conj(G).
DenseSuperoperator unitary_superop(const DenseOperator& g);

/// sum_l K_l (x) conj(K_l).
DenseSuperoperator kraus_superop(std::span<const DenseOperator> kraus);

/// Embeds a local superoperator on `sites` (in local row-major convention,
/// first listed site most significant) into an L-site superoperator.
DenseSuperoperator embed_superop(const Matrix& local,
                                 std::span<const int> sites, int num_sites);

VectorizedOperator vectorize(const DenseOperator& op);
DenseOperator unvectorize(const VectorizedOperator& v);

/// |1>> on L qubits.
VectorizedOperator vectorized_identity(int num_sites);

/// max_k |(<<1|S)_k - <<1|_k|; zero for a trace-preserving superoperator.
double trace_preservation_error(const DenseSuperoperator& s);

/// Swaps the middle index pair: out(ab, cd) = in(ac, bd) with every index
/// ranging over 2^L values. Self-inverse.
Matrix reshuffle(const Matrix& m);

struct ChoiState {
  Matrix state;  // normalized, trace one
  double norm;   // trace of the unnormalized process matrix
};

/// Process matrix of a superoperator, normalized to unit trace. For a
/// trace-preserving map the normalization equals 2^L.
ChoiState choi_reshape(const DenseSuperoperator& s);

}  // namespace qdenoise::pauli
