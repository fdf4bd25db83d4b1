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

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace qdenoise {

using Complex = std::complex<double>;

// Row-major storage so that every row of a superoperator-sized matrix is a
// contiguous block; the local-gate kernels gather and scatter whole rows.
using Matrix =
    Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::Matrix<Complex, Eigen::Dynamic, 1>;
using RealVector = Eigen::VectorXd;

// Operator on 2^L dimensional Hilbert space.
using DenseOperator = Matrix;
// Operator vectorized row-major: rho(i, j) -> entry i * 2^L + j.
using VectorizedOperator = Vector;
// 4^L x 4^L matrix acting on vectorized operators.
using DenseSuperoperator = Matrix;

/// Raised for malformed arguments: out-of-range sites, bad shapes, invalid
/// probabilities.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a computation produces a non-finite or otherwise unusable
/// number (NaN cost, complex residue on a real observable, solver failure).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a run configuration or persisted artifact cannot be used.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Number of sites of a periodic spin-1/2 chain. Brickwall layers with
/// periodic boundary conditions need an even count.
class QubitCount {
 public:
  static constexpr int kMaxSites = 12;

  explicit QubitCount(int sites) : sites_(sites) {
    if (sites < 2 || sites % 2 != 0 || sites > kMaxSites) {
      throw InvalidArgument("QubitCount: L must be even with 2 <= L <= " +
                            std::to_string(kMaxSites) + ", got " +
                            std::to_string(sites));
    }
  }

  int value() const { return sites_; }
  operator int() const { return sites_; }

  long hilbert_dim() const { return 1L << sites_; }
  long superop_dim() const { return 1L << (2 * sites_); }

 private:
  int sites_;
};

}  // namespace qdenoise
