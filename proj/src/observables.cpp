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

#include "qdenoise/observables.hpp"

#include <cmath>
#include <string>

namespace qdenoise::observables {

namespace {

void check_site(int site, QubitCount L, const char* what) {
  if (site < 0 || site >= L) {
    throw InvalidArgument(std::string(what) + ": site " + std::to_string(site) +
                          " out of range for L=" + std::to_string(L.value()));
  }
}

// sigma_z eigenvalue of basis state b on `site`.
double z_sign(long b, int site, int num_sites) {
  return ((b >> (num_sites - 1 - site)) & 1) ? -1.0 : 1.0;
}

double real_part(Complex value, const char* what) {
  if (!std::isfinite(value.real()) || !std::isfinite(value.imag())) {
    throw NumericalError(std::string(what) + ": non-finite value");
  }
  if (std::abs(value.imag()) > kImaginaryTolerance) {
    throw NumericalError(std::string(what) + ": imaginary residue " +
                         std::to_string(value.imag()));
  }
  return value.real();
}

}  // namespace

Observable Observable::from_operator(const DenseOperator& op) {
  if (op.rows() != op.cols()) {
    throw InvalidArgument("Observable: operator must be square");
  }
  const long d = op.rows();
  Vector w(d * d);
  for (long i = 0; i < d; ++i) {
    for (long j = 0; j < d; ++j) w[i * d + j] = op(j, i);
  }
  return Observable(std::move(w));
}

Observable Observable::pauli_z(int site, QubitCount L) {
  check_site(site, L, "Observable::pauli_z");
  return Observable(pauli_z_vectorized(site, L));
}

Complex Observable::expectation(const VectorizedOperator& x) const {
  if (x.size() != weights_.size()) {
    throw InvalidArgument("Observable: vector length " +
                          std::to_string(x.size()) + ", expected " +
                          std::to_string(weights_.size()));
  }
  return (weights_.array() * x.array()).sum();
}

VectorizedOperator pauli_z_vectorized(int site, QubitCount L) {
  check_site(site, L, "pauli_z_vectorized");
  const long d = L.hilbert_dim();
  VectorizedOperator v = VectorizedOperator::Zero(d * d);
  for (long b = 0; b < d; ++b) v[b * d + b] = z_sign(b, site, L);
  return v;
}

double two_point_zz(const GateList& circuit, int i, int j, QubitCount L) {
  check_site(i, L, "two_point_zz");
  const VectorizedOperator x =
      circuits::apply(circuit, pauli_z_vectorized(j, L), L);
  const Complex value = Observable::pauli_z(i, L).expectation(x) /
                        static_cast<double>(L.hilbert_dim());
  return real_part(value, "two_point_zz");
}

double otoc(const GateList& forward, const GateList& backward, int i, int j,
            QubitCount L) {
  check_site(i, L, "otoc");
  const long d = L.hilbert_dim();
  VectorizedOperator x = circuits::apply(forward, pauli_z_vectorized(j, L), L);
  for (long a = 0; a < d; ++a) {
    const double za = z_sign(a, i, L);
    for (long b = 0; b < d; ++b) x[a * d + b] *= za * z_sign(b, i, L);
  }
  x = circuits::apply(backward, x, L);
  const Complex value = Observable::pauli_z(j, L).expectation(x) /
                        static_cast<double>(d);
  if (!std::isfinite(value.real())) {
    throw NumericalError("otoc: non-finite value");
  }
  return value.real();
}

VectorizedOperator domain_wall_state(QubitCount L) {
  const long d = L.hilbert_dim();
  long dw = 0;
  for (int q = 0; q < L / 2; ++q) dw |= 1L << (L - 1 - q);
  VectorizedOperator v = VectorizedOperator::Zero(d * d);
  v[dw * d + dw] = 1.0;
  return v;
}

double domain_wall_sign(int site, QubitCount L) {
  const int i = site + 1;
  return ((2 * i) / L) % 2 == 0 ? 1.0 : -1.0;
}

double domain_wall_magnetization(const GateList& circuit, QubitCount L,
                                 int n_stack) {
  if (n_stack < 1) {
    throw InvalidArgument("domain_wall_magnetization: n_stack must be >= 1");
  }
  VectorizedOperator x = domain_wall_state(L);
  for (int n = 0; n < n_stack; ++n) x = circuits::apply(circuit, x, L);
  const long d = L.hilbert_dim();
  Complex total = 0.0;
  for (long b = 0; b < d; ++b) {
    double weight = 0.0;
    for (int q = 0; q < L; ++q) weight += domain_wall_sign(q, L) * z_sign(b, q, L);
    total += weight * x[b * d + b];
  }
  return real_part(total, "domain_wall_magnetization");
}

}  // namespace qdenoise::observables
