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

#include "qdenoise/pauli.hpp"

#include <cmath>
#include <string>

#include "qdenoise/kernels.hpp"

namespace qdenoise::pauli {

DenseOperator pauli_matrix(int alpha) {
  const Complex i(0.0, 1.0);
  DenseOperator m(2, 2);
  switch (alpha) {
    case 0:
      m << 1, 0, 0, 1;
      break;
    case 1:
      m << 0, 1, 1, 0;
      break;
    case 2:
      m << 0, -i, i, 0;
      break;
    case 3:
      m << 1, 0, 0, -1;
      break;
    default:
      throw InvalidArgument("pauli_matrix: index must be 0..3, got " +
                            std::to_string(alpha));
  }
  return m;
}

DenseOperator identity(long dim) { return DenseOperator::Identity(dim, dim); }

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (long r = 0; r < a.rows(); ++r) {
    for (long c = 0; c < a.cols(); ++c) {
      out.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) = a(r, c) * b;
    }
  }
  return out;
}

int qubits_for_dim(long dim) {
  if (dim < 1 || (dim & (dim - 1)) != 0) {
    throw InvalidArgument("dimension " + std::to_string(dim) +
                          " is not a power of two");
  }
  int n = 0;
  while ((1L << n) < dim) ++n;
  return n;
}

DenseOperator cyclic_shift(int num_sites, int shift) {
  if (num_sites < 1) throw InvalidArgument("cyclic_shift: need L >= 1");
  const long dim = 1L << num_sites;
  shift = ((shift % num_sites) + num_sites) % num_sites;
  DenseOperator p = DenseOperator::Zero(dim, dim);
  for (long in = 0; in < dim; ++in) {
    long out = 0;
    for (int q = 0; q < num_sites; ++q) {
      const long bit = (in >> (num_sites - 1 - q)) & 1;
      const int dest = (q + shift) % num_sites;
      out |= bit << (num_sites - 1 - dest);
    }
    p(out, in) = 1.0;
  }
  return p;
}

DenseOperator embed_local(const DenseOperator& op, int site, int num_sites) {
  if (op.rows() != op.cols()) {
    throw InvalidArgument("embed_local: operator is not square");
  }
  const int k = qubits_for_dim(op.rows());
  if (num_sites < 1 || k > num_sites) {
    throw InvalidArgument("embed_local: " + std::to_string(k) +
                          "-qubit operator does not fit in " +
                          std::to_string(num_sites) + " sites");
  }
  if (site < 0 || site >= num_sites) {
    throw InvalidArgument("embed_local: site " + std::to_string(site) +
                          " out of range for L=" + std::to_string(num_sites));
  }
  if (site + k <= num_sites) {
    return kron(kron(identity(1L << site), op),
                identity(1L << (num_sites - site - k)));
  }
  const DenseOperator at_zero = kron(op, identity(1L << (num_sites - k)));
  const DenseOperator shift = cyclic_shift(num_sites, site);
  return shift * at_zero * shift.adjoint();
}

DenseSuperoperator unitary_superop(const DenseOperator& g) {
  if (g.rows() != g.cols()) {
    throw InvalidArgument("unitary_superop: operator is not square");
  }
  return kron(g, g.conjugate());
}

DenseSuperoperator kraus_superop(std::span<const DenseOperator> kraus) {
  if (kraus.empty()) throw InvalidArgument("kraus_superop: empty Kraus set");
  const long d = kraus.front().rows();
  DenseSuperoperator s = DenseSuperoperator::Zero(d * d, d * d);
  for (const auto& k : kraus) {
    if (k.rows() != d || k.cols() != d) {
      throw InvalidArgument("kraus_superop: Kraus operators differ in shape");
    }
    s += kron(k, k.conjugate());
  }
  return s;
}

DenseSuperoperator embed_superop(const Matrix& local,
                                 std::span<const int> sites, int num_sites) {
  const auto positions = kernels::superop_positions(sites, num_sites);
  kernels::Placement placement(positions, 2 * num_sites);
  DenseSuperoperator s = DenseSuperoperator::Identity(placement.full_dim(),
                                                      placement.full_dim());
  kernels::apply_rows(local, placement, s);
  return s;
}

VectorizedOperator vectorize(const DenseOperator& op) {
  VectorizedOperator v(op.size());
  for (long i = 0; i < op.rows(); ++i) {
    for (long j = 0; j < op.cols(); ++j) v[i * op.cols() + j] = op(i, j);
  }
  return v;
}

DenseOperator unvectorize(const VectorizedOperator& v) {
  const int n2 = qubits_for_dim(v.size());
  if (n2 % 2 != 0) {
    throw InvalidArgument("unvectorize: length is not a power of four");
  }
  const long d = 1L << (n2 / 2);
  DenseOperator op(d, d);
  for (long i = 0; i < d; ++i) {
    for (long j = 0; j < d; ++j) op(i, j) = v[i * d + j];
  }
  return op;
}

VectorizedOperator vectorized_identity(int num_sites) {
  const long d = 1L << num_sites;
  VectorizedOperator v = VectorizedOperator::Zero(d * d);
  for (long i = 0; i < d; ++i) v[i * d + i] = 1.0;
  return v;
}

double trace_preservation_error(const DenseSuperoperator& s) {
  if (s.rows() != s.cols()) {
    throw InvalidArgument("trace_preservation_error: not square");
  }
  const int n2 = qubits_for_dim(s.rows());
  const long d = 1L << (n2 / 2);
  // <<1|S is the sum of the rows with index i * d + i.
  Eigen::Matrix<Complex, 1, Eigen::Dynamic> row =
      Eigen::Matrix<Complex, 1, Eigen::Dynamic>::Zero(s.cols());
  for (long i = 0; i < d; ++i) row += s.row(i * d + i);
  for (long i = 0; i < d; ++i) row[i * d + i] -= 1.0;
  return row.cwiseAbs().maxCoeff();
}

Matrix reshuffle(const Matrix& m) {
  if (m.rows() != m.cols()) throw InvalidArgument("reshuffle: not square");
  const int n2 = qubits_for_dim(m.rows());
  if (n2 % 2 != 0) {
    throw InvalidArgument("reshuffle: dimension is not a power of four");
  }
  const long d = 1L << (n2 / 2);
  Matrix out(m.rows(), m.cols());
  for (long a = 0; a < d; ++a) {
    for (long b = 0; b < d; ++b) {
      for (long c = 0; c < d; ++c) {
        for (long e = 0; e < d; ++e) {
          out(a * d + b, c * d + e) = m(a * d + c, b * d + e);
        }
      }
    }
  }
  return out;
}

ChoiState choi_reshape(const DenseSuperoperator& s) {
  Matrix chi = reshuffle(s);
  const double norm = chi.trace().real();
  if (!std::isfinite(norm) || std::abs(norm) < 1e-300) {
    throw NumericalError("choi_reshape: process matrix has vanishing trace");
  }
  chi /= norm;
  return {std::move(chi), norm};
}

}  // namespace qdenoise::pauli
