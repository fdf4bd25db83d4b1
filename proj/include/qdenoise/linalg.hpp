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

// Thin wrappers over LAPACK eigensolvers.

namespace qdenoise::linalg {

/// Eigenvalues of a general complex matrix (unsorted). Throws NumericalError
/// when the solver does not converge.
std::vector<Complex> eigenvalues(const Matrix& m);

/// Eigenvalues of a Hermitian matrix in ascending order. Only one triangle
/// is read.
RealVector hermitian_eigenvalues(const Matrix& m);

}  // namespace qdenoise::linalg
