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

#include <cmath>
#include <random>
#include <vector>

#include <catch_amalgamated.hpp>

#include "oracles.hpp"
#include "qdenoise/observables.hpp"
#include "qdenoise/pauli.hpp"

using namespace qdenoise;
using namespace qdenoise::observables;
using circuits::Gate;
using circuits::TrotterSpec;
using channels::NoiseModel;
using Catch::Matchers::WithinAbs;

namespace {

const Complex kI(0.0, 1.0);

Matrix oracle_hamiltonian(int L) {
  Matrix h = Matrix::Zero(1L << L, 1L << L);
  for (int i = 0; i < L; ++i)
    for (int a = 1; a <= 3; ++a)
      h += oracle::embed_pair(oracle::kron(oracle::pauli(a), oracle::pauli(a)), i,
                              (i + 1) % L, L);
  return h;
}

Matrix z_on(int site, int L) { return oracle::embed_open(oracle::pauli(3), site, L); }

// One gate acting on the whole chain.
GateList whole_chain(const Matrix& superop, int L) {
  return {Gate{superop, 0, L, 0}};
}

}  // namespace

TEST_CASE("observable functional", "[observables]") {
  std::mt19937_64 rng(1);
  const Matrix o = oracle::random_gaussian(8, 8, rng);
  const Matrix rho = oracle::random_density(8, rng);
  const Observable obs = Observable::from_operator(o);
  CHECK(std::abs(obs.expectation(oracle::vec(rho)) - (o * rho).trace()) < 1e-13);
  CHECK(std::abs(Observable::pauli_z(1, QubitCount(4)).expectation(oracle::vec(
                     oracle::random_density(16, rng))) -
                 0.0) < 2.0);
  CHECK((pauli_z_vectorized(2, QubitCount(4)) - oracle::vec(z_on(2, 4)))
            .cwiseAbs()
            .maxCoeff() == 0.0);
  CHECK_THROWS_AS(obs.expectation(Vector::Zero(4)), InvalidArgument);
  CHECK_THROWS_AS(pauli_z_vectorized(4, QubitCount(4)), InvalidArgument);
}

TEST_CASE("two-point correlator", "[observables]") {
  const QubitCount L(4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      CHECK(two_point_zz({}, i, j, L) == (i == j ? 1.0 : 0.0));

  // Against exact Heisenberg evolution at L = 6; the error shrinks with m.
  const Matrix u = oracle::expm(-kI * oracle_hamiltonian(6));
  std::vector<double> worst;
  for (int m : {16, 32}) {
    TrotterSpec spec{QubitCount(6), 1.0, m, NoiseModel()};
    const GateList c = circuits::build_trotter(spec, false);
    double w = 0.0;
    for (int j : {0, 1, 2, 3}) {
      const Matrix evolved = u * z_on(j, 6) * u.adjoint();
      const double exact = (z_on(2, 6) * evolved).trace().real() / 64.0;
      w = std::max(w, std::abs(two_point_zz(c, 2, j, spec.L) - exact));
    }
    worst.push_back(w);
  }
  INFO("errors " << worst[0] << " " << worst[1]);
  CHECK(worst[0] < 1e-2);
  CHECK(worst[1] < worst[0] / 3.0);

  // Operator-norm bound on a noisy circuit.
  TrotterSpec noisy{QubitCount(4), 2.0, 8, NoiseModel(0.05)};
  const GateList nc = circuits::build_trotter(noisy, true);
  for (int j = 0; j < 4; ++j) CHECK(std::abs(two_point_zz(nc, 0, j, noisy.L)) <= 1.0);

  // A map that is not Hermiticity preserving leaves an imaginary residue.
  const GateList phase{Gate{kI * Matrix::Identity(16, 16), 0, 2, 0}};
  CHECK_THROWS_AS(two_point_zz(phase, 0, 0, L), NumericalError);
}

TEST_CASE("correlator translation covariance", "[observables]") {
  const int L = 6;
  const Matrix u = oracle::expm(-kI * 0.7 * oracle_hamiltonian(L));
  const GateList exact = whole_chain(pauli::unitary_superop(u), L);
  for (int d = 0; d < L; ++d) {
    const double ref = two_point_zz(exact, d, 0, QubitCount(L));
    for (int j = 1; j < L; ++j) {
      CHECK_THAT(two_point_zz(exact, (j + d) % L, j, QubitCount(L)), WithinAbs(ref, 1e-12));
    }
  }
  // The brickwall circuit is covariant under translation by two sites.
  TrotterSpec spec{QubitCount(L), 1.0, 4, NoiseModel(0.01)};
  const GateList c = circuits::build_trotter(spec, true);
  for (int i = 0; i < L; ++i)
    for (int j = 0; j < L; ++j)
      CHECK_THAT(two_point_zz(c, (i + 2) % L, (j + 2) % L, spec.L),
                 WithinAbs(two_point_zz(c, i, j, spec.L), 1e-12));
}

TEST_CASE("out-of-time-order correlator", "[observables]") {
  const QubitCount L(6);
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) CHECK_THAT(otoc({}, {}, i, j, L), WithinAbs(1.0, 1e-14));

  // Exact evolution oracle: Tr(Z_j W Z_j W) / 2^L with W = U^dag Z_i U.
  const double t = 0.2;
  const Matrix u = oracle::expm(-kI * t * oracle_hamiltonian(6));
  TrotterSpec fwd{L, t, 32, NoiseModel()}, bwd{L, -t, 32, NoiseModel()};
  const GateList f = circuits::build_trotter(fwd, false);
  const GateList b = circuits::build_trotter(bwd, false);
  const int i = 3;
  std::vector<double> values;
  for (int j = 0; j < 6; ++j) {
    const Matrix w = u.adjoint() * z_on(i, 6) * u;
    const double exact = (z_on(j, 6) * w * z_on(j, 6) * w).trace().real() / 64.0;
    const double value = otoc(f, b, i, j, L);
    CHECK_THAT(value, WithinAbs(exact, 5e-3));
    values.push_back(value);
  }
  // Light cone: far sites stay near one, the nearest neighbours decay.
  CHECK(values[0] > 0.99);
  CHECK(values[1] > 0.95);
  CHECK(values[5] > 0.95);
  CHECK(values[2] < 0.6);
  CHECK(values[4] < 0.6);

  TrotterSpec noisy{L, t, 8, NoiseModel(0.02)};
  TrotterSpec noisy_back{L, -t, 8, NoiseModel(0.02)};
  const double v = otoc(circuits::build_trotter(noisy, true),
                        circuits::build_trotter(noisy_back, true), 3, 2, L);
  CHECK(std::abs(v) <= 1.0);
}

TEST_CASE("domain wall magnetization", "[observables]") {
  // Direct evaluation of the alternating-sign sum on the product state.
  for (int L : {4, 6, 8}) {
    double expected = 0.0;
    for (int i = 1; i <= L; ++i) {
      const double sign = ((2 * i) / L) % 2 == 0 ? 1.0 : -1.0;
      const double z = i <= L / 2 ? -1.0 : 1.0;
      expected += sign * z;
    }
    CHECK(domain_wall_magnetization({}, QubitCount(L)) == expected);
  }
  CHECK(domain_wall_magnetization({}, QubitCount(4)) == 0.0);
  CHECK(domain_wall_magnetization({}, QubitCount(6)) == -2.0);
  CHECK(domain_wall_magnetization({}, QubitCount(8)) == -4.0);

  const VectorizedOperator dw = domain_wall_state(QubitCount(4));
  const Matrix rho = pauli::unvectorize(dw);
  CHECK(std::abs(rho(12, 12) - 1.0) == 0.0);  // |1100>

  // Fully depolarizing on every bond.
  const Matrix full = channels::depolarizing_local(NoiseModel(15.0 / 16.0));
  const GateList depol{Gate{full, 0, 2, 0}, Gate{full, 2, 2, 0}, Gate{full, 4, 2, 0}};
  CHECK(std::abs(domain_wall_magnetization(depol, QubitCount(6))) < 1e-15);

  // Stacking applies the circuit repeatedly.
  TrotterSpec spec{QubitCount(6), 0.3, 2, NoiseModel(0.01)};
  const GateList c = circuits::build_trotter(spec, true);
  CHECK_THAT(domain_wall_magnetization(c, spec.L, 3),
             WithinAbs(domain_wall_magnetization(circuits::stack(c, 3), spec.L), 1e-13));
  CHECK_THROWS_AS(domain_wall_magnetization(c, spec.L, 0), InvalidArgument);
}
