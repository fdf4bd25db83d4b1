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

// Independent reference implementations used by the tests. None of these
// call into the superoperator code they are used to check.

#include <cmath>
#include <complex>
#include <functional>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "qdenoise/types.hpp"

namespace oracle {

using qdenoise::Complex;
using qdenoise::Matrix;
using qdenoise::RealVector;
using qdenoise::Vector;

inline Matrix random_gaussian(long rows, long cols, std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Matrix m(rows, cols);
  for (long i = 0; i < rows; ++i) {
    for (long j = 0; j < cols; ++j) m(i, j) = Complex(n(rng), n(rng));
  }
  return m;
}

/// Haar-like unitary from the QR factorization of a Gaussian matrix.
inline Matrix random_unitary(long dim, std::mt19937_64& rng) {
  const Eigen::MatrixXcd a = random_gaussian(dim, dim, rng);
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(a);
  Eigen::MatrixXcd q = qr.householderQ();
  const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (long k = 0; k < dim; ++k) q.col(k) *= r(k, k) / std::abs(r(k, k));
  return q;
}

inline Matrix random_hermitian(long dim, std::mt19937_64& rng) {
  const Matrix a = random_gaussian(dim, dim, rng);
  return (a + a.adjoint()) / 2.0;
}

inline Matrix random_density(long dim, std::mt19937_64& rng) {
  const Matrix a = random_gaussian(dim, dim, rng);
  Matrix rho = a * a.adjoint();
  return rho / rho.trace();
}

/// Kraus set {A_k S^{-1/2}} with S = sum A_k^dagger A_k.
inline std::vector<Matrix> random_kraus(long dim, int count,
                                        std::mt19937_64& rng) {
  std::vector<Matrix> a;
  Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(dim, dim);
  for (int k = 0; k < count; ++k) {
    a.push_back(random_gaussian(dim, dim, rng));
    s += a.back().adjoint() * a.back();
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(s);
  const Eigen::MatrixXcd inv_sqrt =
      es.eigenvectors() *
      es.eigenvalues().cwiseSqrt().cwiseInverse().cast<Complex>().asDiagonal() *
      es.eigenvectors().adjoint();
  for (auto& k : a) k = k * inv_sqrt;
  return a;
}

/// Kronecker product by explicit index arithmetic.
inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (long i = 0; i < a.rows(); ++i)
    for (long j = 0; j < a.cols(); ++j)
      for (long k = 0; k < b.rows(); ++k)
        for (long l = 0; l < b.cols(); ++l)
          out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return out;
}

inline Matrix pauli(int a) {
  Matrix p = Matrix::Zero(2, 2);
  const Complex i(0.0, 1.0);
  switch (a) {
    case 0: p << 1, 0, 0, 1; break;
    case 1: p << 0, 1, 1, 0; break;
    case 2: p << 0, -i, i, 0; break;
    default: p << 1, 0, 0, -1; break;
  }
  return p;
}

/// Permutation matrix sending basis state |b_0 ... b_{L-1}> to the state
/// with b_q placed on site perm[q] (site 0 most significant).
inline Matrix site_permutation(const std::vector<int>& perm) {
  const int n = static_cast<int>(perm.size());
  const long d = 1L << n;
  Matrix p = Matrix::Zero(d, d);
  for (long b = 0; b < d; ++b) {
    long image = 0;
    for (int q = 0; q < n; ++q) {
      if ((b >> (n - 1 - q)) & 1) image |= 1L << (n - 1 - perm[q]);
    }
    p(image, b) = 1.0;
  }
  return p;
}

/// Operator on consecutive sites [site, site + k) of an open chain.
inline Matrix embed_open(const Matrix& op, int site, int num_sites) {
  const int k = static_cast<int>(std::log2(static_cast<double>(op.rows())) + 0.5);
  Matrix out = Matrix::Identity(1L << site, 1L << site);
  out = kron(out, op);
  return kron(out, Matrix::Identity(1L << (num_sites - site - k),
                                    1L << (num_sites - site - k)));
}

/// Two-site operator on sites (a, b) of L, a != b, any order.
inline Matrix embed_pair(const Matrix& op, int a, int b, int num_sites) {
  std::vector<int> perm(num_sites);
  // Move site a to 0 and b to 1, keeping the rest in order.
  std::vector<int> order{a, b};
  for (int q = 0; q < num_sites; ++q)
    if (q != a && q != b) order.push_back(q);
  for (int pos = 0; pos < num_sites; ++pos) perm[order[pos]] = pos;
  const Matrix p = site_permutation(perm);
  return p.adjoint() * embed_open(op, 0, num_sites) * p;
}

/// exp(A) by scaling and squaring of a truncated Taylor series.
inline Matrix expm(const Matrix& a) {
  const double norm = a.cwiseAbs().rowwise().sum().maxCoeff();
  int squarings = 0;
  if (norm > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
  const Matrix b = a / std::ldexp(1.0, squarings);
  Matrix term = Matrix::Identity(a.rows(), a.cols());
  Matrix sum = term;
  for (int k = 1; k <= 30; ++k) {
    term = term * b / static_cast<double>(k);
    sum += term;
  }
  for (int s = 0; s < squarings; ++s) sum = sum * sum;
  return sum;
}

/// Two-qubit depolarizing channel on a density matrix via explicit Pauli
/// conjugations on sites (a, b).
inline Matrix depolarize(const Matrix& rho, double p, int a, int b,
                         int num_sites) {
  Matrix out = (1.0 - p) * rho;
  for (int k = 1; k < 16; ++k) {
    const Matrix pk = embed_pair(kron(pauli(k / 4), pauli(k % 4)), a, b, num_sites);
    out += (p / 15.0) * pk * rho * pk.adjoint();
  }
  return out;
}

/// Central difference of f along each coordinate of x.
inline std::vector<double> central_difference(
    const std::function<double(const std::vector<double>&)>& f,
    const std::vector<double>& x, double step) {
  std::vector<double> g(x.size());
  for (size_t k = 0; k < x.size(); ++k) {
    std::vector<double> xp = x, xm = x;
    xp[k] += step;
    xm[k] -= step;
    g[k] = (f(xp) - f(xm)) / (2.0 * step);
  }
  return g;
}

/// Row-major vec.
inline Vector vec(const Matrix& m) {
  Vector v(m.size());
  for (long i = 0; i < m.rows(); ++i)
    for (long j = 0; j < m.cols(); ++j) v[i * m.cols() + j] = m(i, j);
  return v;
}

inline Matrix unvec(const Vector& v) {
  const long d = static_cast<long>(std::sqrt(static_cast<double>(v.size())) + 0.5);
  Matrix m(d, d);
  for (long i = 0; i < d; ++i)
    for (long j = 0; j < d; ++j) m(i, j) = v[i * d + j];
  return m;
}

}  // namespace oracle
