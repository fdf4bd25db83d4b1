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

#include "qdenoise/circuits.hpp"
#include "qdenoise/types.hpp"

// Exact infinite-temperature and product-state observables evaluated by
// applying a gate list to vectorized operators.

namespace qdenoise::observables {

using circuits::GateList;

/// Linear functional X -> Tr(O X) on vectorized operators.
class Observable {
 public:
  static Observable from_operator(const DenseOperator& op);
  /// sigma_z on one site (0-based).
  static Observable pauli_z(int site, QubitCount L);

  Complex expectation(const VectorizedOperator& x) const;
  const Vector& weights() const { return weights_; }
  long dim() const { return weights_.size(); }

 private:
  explicit Observable(Vector weights) : weights_(std::move(weights)) {}
  Vector weights_;  // w(i * 2^L + j) = O(j, i)
};

/// Maximum imaginary part tolerated before a real observable is rejected.
inline constexpr double kImaginaryTolerance = 1e-10;

/// vec(sigma_z at `site`), i.e. (sigma_z (x) 1)|1>>.
VectorizedOperator pauli_z_vectorized(int site, QubitCount L);

/// Tr(sigma_z^i S[sigma_z^j]) / 2^L with 0-based sites.
double two_point_zz(const GateList& circuit, int i, int j, QubitCount L);

/// Re Tr(sigma_z^j B[sigma_z^i F[sigma_z^j] sigma_z^i]) / 2^L for forward
/// circuit F and backward circuit B.
double otoc(const GateList& forward, const GateList& backward, int i, int j,
            QubitCount L);

/// |dw><dw| with sites 0..L/2-1 in |1> and the rest in |0>.
VectorizedOperator domain_wall_state(QubitCount L);

/// sum_{i=1..L} (-1)^floor(2i/L) <sigma_z^i> after `n_stack` applications of
/// the circuit to |dw><dw| (1-based i in the sign).
double domain_wall_magnetization(const GateList& circuit, QubitCount L,
                                 int n_stack = 1);

/// Domain-wall sign weights on the product of site expectations, 0-based.
double domain_wall_sign(int site, QubitCount L);

}  // namespace qdenoise::observables
