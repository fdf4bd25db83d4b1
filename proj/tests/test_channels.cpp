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
#include <numbers>
#include <random>
#include <vector>

#include <catch_amalgamated.hpp>

#include "oracles.hpp"
#include "qdenoise/channels.hpp"
#include "qdenoise/linalg.hpp"
#include "qdenoise/pauli.hpp"

using namespace qdenoise;
using namespace qdenoise::channels;
using Catch::Matchers::WithinAbs;

namespace {

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

ChannelParams random_params(std::mt19937_64& rng, double eta_scale = 1.0) {
  std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
  std::uniform_real_distribution<double> eta(-eta_scale, eta_scale);
  std::vector<double> x(ChannelParams::kNumParams);
  x[0] = eta(rng);
  for (size_t k = 1; k < x.size(); ++k) x[k] = angle(rng);
  return ChannelParams::from_array(x);
}

Matrix swap_gate() {
  Matrix s = Matrix::Zero(4, 4);
  s(0, 0) = s(3, 3) = 1.0;
  s(1, 2) = s(2, 1) = 1.0;
  return s;
}

}  // namespace

TEST_CASE("channel params flat layout", "[channels]") {
  std::vector<double> x(17);
  for (int k = 0; k < 17; ++k) x[k] = 0.1 * k;
  const ChannelParams p = ChannelParams::from_array(x);
  CHECK(p.eta1 == x[0]);
  CHECK(p.unitary.alpha == x[1]);
  CHECK(p.unitary.kappa_a[2] == x[4]);
  CHECK(p.unitary.kappa_c[0] == x[5]);
  CHECK(p.measure.kappa_1[0] == x[8]);
  CHECK(p.measure.kappa_2[1] == x[12]);
  CHECK(p.measure.kappa_3[2] == x[16]);
  const auto back = p.to_array();
  CHECK(std::vector<double>(back.begin(), back.end()) == x);
  CHECK(p.eta0() + p.eta1 == 1.0);
  CHECK_THROWS_AS(ChannelParams::from_array(std::vector<double>(16)),
                  InvalidArgument);
}

TEST_CASE("noise model range", "[channels]") {
  CHECK_NOTHROW(NoiseModel(0.0));
  CHECK_NOTHROW(NoiseModel(15.0 / 16.0));
  CHECK_THROWS_AS(NoiseModel(-1e-3), InvalidArgument);
  CHECK_THROWS_AS(NoiseModel(0.95), InvalidArgument);
  CHECK_THROWS_AS(NoiseModel(std::nan("")), InvalidArgument);
}

TEST_CASE("one_qubit_unitary", "[channels]") {
  CHECK(max_abs(one_qubit_unitary({0, 0, 0}) - Matrix::Identity(2, 2)) == 0.0);
  const Matrix flip = one_qubit_unitary({0, std::numbers::pi, 0});
  CHECK(std::abs(flip(0, 0)) < 1e-15);
  CHECK_THAT(std::abs(flip(1, 0)), WithinAbs(1.0, 1e-15));

  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> angle(-7.0, 7.0);
  for (int trial = 0; trial < 20; ++trial) {
    const Angles3 k{angle(rng), angle(rng), angle(rng)};
    const Matrix v = one_qubit_unitary(k);
    CHECK(max_abs(v.adjoint() * v - Matrix::Identity(2, 2)) < 1e-14);
    // Z-Y-Z product from the oracle exponentials.
    const Complex i(0.0, 1.0);
    const Matrix expected = oracle::expm(-i * k[0] / 2.0 * oracle::pauli(3)) *
                            oracle::expm(-i * k[1] / 2.0 * oracle::pauli(2)) *
                            oracle::expm(-i * k[2] / 2.0 * oracle::pauli(3));
    CHECK(max_abs(v - expected) < 1e-13);
    // Analytic derivatives against central differences.
    const auto d = one_qubit_unitary_derivatives(k);
    for (int c = 0; c < 3; ++c) {
      Angles3 kp = k, km = k;
      kp[c] += 1e-6;
      km[c] -= 1e-6;
      const Matrix fd = (one_qubit_unitary(kp) - one_qubit_unitary(km)) / 2e-6;
      CHECK(max_abs(d[c] - fd) < 1e-8);
    }
  }
}

TEST_CASE("zz_dressed_unitary", "[channels]") {
  CHECK(max_abs(zz_dressed_unitary({}) - Matrix::Identity(4, 4)) == 0.0);

  UnitaryParams quarter;
  quarter.alpha = std::numbers::pi / 4;
  const Matrix u = zz_dressed_unitary(quarter);
  const Complex minus = std::exp(Complex(0, -std::numbers::pi / 4));
  const Complex plus = std::exp(Complex(0, std::numbers::pi / 4));
  CHECK(std::abs(u(0, 0) - minus) < 1e-15);
  CHECK(std::abs(u(1, 1) - plus) < 1e-15);
  CHECK(std::abs(u(2, 2) - plus) < 1e-15);
  CHECK(std::abs(u(3, 3) - minus) < 1e-15);
  CHECK(max_abs(u - Matrix(u.diagonal().asDiagonal())) == 0.0);

  std::mt19937_64 rng(2);
  const Matrix swap = swap_gate();
  for (int trial = 0; trial < 20; ++trial) {
    const UnitaryParams p = random_params(rng).unitary;
    const Matrix g = zz_dressed_unitary(p);
    CHECK(max_abs(g.adjoint() * g - Matrix::Identity(4, 4)) < 1e-13);
    CHECK(max_abs(swap * g * swap - g) < 1e-14);
  }
}

TEST_CASE("measure_prepare_channel", "[channels]") {
  // kappa_2 prepares |1> after outcome |1>: complete dephasing.
  MeasurePrepParams dephase;
  dephase.kappa_2 = {0, std::numbers::pi, 0};
  const Matrix s = measure_prepare_channel(dephase);
  std::mt19937_64 rng(4);
  const Matrix rho = oracle::random_density(2, rng);
  const Matrix out = pauli::unvectorize(s * pauli::vectorize(rho));
  CHECK(std::abs(out(0, 1)) < 1e-15);
  CHECK(std::abs(out(0, 0) - rho(0, 0)) < 1e-15);
  CHECK(std::abs(out(1, 1) - rho(1, 1)) < 1e-15);

  // Equal preparations: constant channel.
  MeasurePrepParams constant;
  constant.kappa_1 = constant.kappa_2 = {0.3, 1.1, -0.4};
  constant.kappa_3 = {0.7, 0.2, 2.0};
  const Matrix c = measure_prepare_channel(constant);
  const Matrix psi1 = one_qubit_unitary(constant.kappa_1).col(0);
  const Matrix target = psi1 * psi1.adjoint();
  for (int trial = 0; trial < 5; ++trial) {
    const Matrix r = oracle::random_density(2, rng);
    CHECK(max_abs(pauli::unvectorize(c * pauli::vectorize(r)) - target) < 1e-14);
  }

  for (int trial = 0; trial < 20; ++trial) {
    const MeasurePrepParams p = random_params(rng).measure;
    const auto k = measure_prepare_kraus(p);
    const Matrix sum = k[0].adjoint() * k[0] + k[1].adjoint() * k[1];
    CHECK(max_abs(sum - Matrix::Identity(2, 2)) < 1e-14);
    // M (x) M equals the Kronecker structure of the one-qubit channel,
    // reordered into the two-qubit vectorization.
    const Matrix one = measure_prepare_channel(p);
    const Matrix two = correlated_measurement_local(p);
    const Matrix rho2 = oracle::random_density(4, rng);
    Matrix expected = Matrix::Zero(4, 4);
    for (const Matrix& ka : k)
      for (const Matrix& kb : k) {
        const Matrix kk = oracle::kron(ka, kb);
        expected += kk * rho2 * kk.adjoint();
      }
    CHECK(max_abs(pauli::unvectorize(two * pauli::vectorize(rho2)) - expected) <
          1e-14);
    CHECK(pauli::trace_preservation_error(one) < 1e-14);
  }
}

TEST_CASE("depolarizing_channel", "[channels]") {
  CHECK(max_abs(depolarizing_channel(NoiseModel(0.0), 4, 1) -
                Matrix::Identity(256, 256)) == 0.0);

  // p = 15/16 replaces the pair by the maximally mixed state.
  const Matrix full = depolarizing_local(NoiseModel(15.0 / 16.0));
  std::mt19937_64 rng(9);
  const Matrix rho = oracle::random_density(4, rng);
  CHECK(max_abs(pauli::unvectorize(full * pauli::vectorize(rho)) -
                Matrix::Identity(4, 4) / 4.0) < 1e-15);

  // On three sites the wrapped pair is traced and replaced.
  const Matrix rho3 = oracle::random_density(8, rng);
  const Matrix out3 = pauli::unvectorize(
      depolarizing_channel(NoiseModel(15.0 / 16.0), 3, 2) * pauli::vectorize(rho3));
  Matrix reduced = Matrix::Zero(2, 2);  // state of site 1
  for (long a = 0; a < 8; ++a)
    for (long b = 0; b < 8; ++b)
      if ((a & 5) == (b & 5)) reduced((a >> 1) & 1, (b >> 1) & 1) += rho3(a, b);
  const Matrix expected3 = oracle::embed_pair(Matrix::Identity(4, 4) / 4.0, 2, 0, 3) *
                           oracle::kron(Matrix::Identity(2, 2),
                                        oracle::kron(reduced, Matrix::Identity(2, 2)));
  CHECK(max_abs(out3 - expected3) < 1e-14);

  for (double p : {0.001, 0.01, 0.3}) {
    const Matrix s = depolarizing_channel(NoiseModel(p), 4, 3);
    CHECK(pauli::trace_preservation_error(s) < 1e-12);
    Matrix oracle_superop = Matrix::Zero(256, 256);
    for (long k = 0; k < 256; ++k) {
      Matrix e = Matrix::Zero(16, 16);
      e(k / 16, k % 16) = 1.0;
      oracle_superop.col(k) = oracle::vec(oracle::depolarize(e, p, 3, 0, 4));
    }
    CHECK(max_abs(s - oracle_superop) < 1e-14);
  }
  const CptpReport r = check_cptp(depolarizing_channel(NoiseModel(0.01), 2, 0));
  CHECK(r.trace_error < 1e-12);
  CHECK(r.min_choi_eigenvalue >= -1e-12);
  CHECK_THROWS_AS(depolarizing_channel(NoiseModel(0.01), 4, 4), InvalidArgument);
}

TEST_CASE("denoiser_channel", "[channels]") {
  CHECK(max_abs(denoiser_channel(ChannelParams::identity(), NoiseModel(0.0), 2, 0) -
                Matrix::Identity(16, 16)) < 1e-15);

  std::mt19937_64 rng(12);
  ChannelParams p = random_params(rng);
  p.eta1 = 0.0;
  const NoiseModel noise(0.01);
  const Matrix expected = depolarizing_local(noise) *
                          pauli::unitary_superop(zz_dressed_unitary(p.unitary));
  CHECK(max_abs(denoiser_local(p, noise) - expected) < 1e-14);

  // Negative quasiprobability: trace preserving but not completely positive.
  p.eta1 = -0.3;
  const Matrix neg = denoiser_channel(p, noise, 2, 0);
  const CptpReport r = check_cptp(neg);
  CHECK(r.trace_error < 1e-12);
  CHECK(r.min_choi_eigenvalue < 0.0);

  // Affine in eta.
  const ChannelParams q = random_params(rng);
  ChannelParams a = q, b = q, mid = q;
  a.eta1 = -0.4;
  b.eta1 = 1.6;
  mid.eta1 = 0.25 * a.eta1 + 0.75 * b.eta1;
  const Matrix interp = 0.25 * denoiser_local(a, noise) + 0.75 * denoiser_local(b, noise);
  CHECK(max_abs(interp - denoiser_local(mid, noise)) < 1e-12);

  // Embedding at the wrapped bond agrees with the generic embedding.
  const int wrap[2] = {3, 0};
  CHECK(max_abs(denoiser_channel(q, noise, 4, 3) -
                pauli::embed_superop(denoiser_local(q, noise), wrap, 4)) < 1e-15);
}

TEST_CASE("denoiser jet matches finite differences", "[channels]") {
  std::mt19937_64 rng(13);
  const NoiseModel noise(0.02);
  for (int trial = 0; trial < 5; ++trial) {
    const ChannelParams p = random_params(rng);
    const LocalChannelJet jet = denoiser_local_jet(p, noise);
    CHECK(max_abs(jet.value - denoiser_local(p, noise)) < 1e-14);
    const auto x = p.to_array();
    for (int k = 0; k < ChannelParams::kNumParams; ++k) {
      auto xp = x, xm = x;
      xp[k] += 1e-6;
      xm[k] -= 1e-6;
      const Matrix fd = (denoiser_local(ChannelParams::from_array(xp), noise) -
                         denoiser_local(ChannelParams::from_array(xm), noise)) /
                        2e-6;
      CHECK(max_abs(jet.derivatives[k] - fd) < 1e-8);
    }
  }
}

TEST_CASE("gamma_of", "[channels]") {
  ChannelParams p;
  CHECK(gamma_of(p) == 1.0);
  p.eta1 = -0.2;
  CHECK_THAT(gamma_of(p), WithinAbs(1.4, 1e-15));
  p.eta1 = 0.5;
  CHECK(gamma_of(p) == 1.0);
  p.eta1 = 1.5;
  CHECK_THAT(gamma_of(p), WithinAbs(2.0, 1e-15));
}

TEST_CASE("randomized CPTP draws", "[channels]") {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> prob(0.0, 15.0 / 16.0);
  for (int trial = 0; trial < 100; ++trial) {
    const ChannelParams p = random_params(rng);
    const NoiseModel noise(prob(rng));
    const CptpReport mp = check_cptp(measure_prepare_channel(p.measure));
    CHECK(mp.trace_error < 1e-12);
    CHECK(mp.min_choi_eigenvalue >= -1e-10);
    const CptpReport mm = check_cptp(correlated_measurement_local(p.measure));
    CHECK(mm.trace_error < 1e-12);
    CHECK(mm.min_choi_eigenvalue >= -1e-10);
    const CptpReport dep = check_cptp(depolarizing_local(noise));
    CHECK(dep.trace_error < 1e-12);
    CHECK(dep.min_choi_eigenvalue >= -1e-10);
    CHECK(pauli::trace_preservation_error(denoiser_local(p, noise)) < 1e-12);
  }
}
