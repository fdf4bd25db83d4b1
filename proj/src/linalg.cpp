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

#include "qdenoise/linalg.hpp"

#include <lapacke.h>

#include <string>

namespace qdenoise::linalg {

std::vector<Complex> eigenvalues(const Matrix& m) {
  if (m.rows() != m.cols()) throw InvalidArgument("eigenvalues: not square");
  const lapack_int n = static_cast<lapack_int>(m.rows());
  Matrix a = m;
  std::vector<Complex> w(n);
  // The row-major buffer read column-major is the transpose, which has the
  // same eigenvalues.
  const lapack_int info = LAPACKE_zgeev(
      LAPACK_COL_MAJOR, 'N', 'N', n,
      reinterpret_cast<lapack_complex_double*>(a.data()), n,
      reinterpret_cast<lapack_complex_double*>(w.data()), nullptr, 1, nullptr,
      1);
  if (info != 0) {
    throw NumericalError("zgeev failed with info=" + std::to_string(info));
  }
  return w;
}

RealVector hermitian_eigenvalues(const Matrix& m) {
  if (m.rows() != m.cols()) {
    throw InvalidArgument("hermitian_eigenvalues: not square");
  }
  const lapack_int n = static_cast<lapack_int>(m.rows());
  Matrix a = m;
  RealVector w(n);
  // Column-major view of a Hermitian row-major buffer is its conjugate.
  const lapack_int info = LAPACKE_zheevd(
      LAPACK_COL_MAJOR, 'N', 'L', n,
      reinterpret_cast<lapack_complex_double*>(a.data()), n, w.data());
  if (info != 0) {
    throw NumericalError("zheevd failed with info=" + std::to_string(info));
  }
  return w;
}

}  // namespace qdenoise::linalg
