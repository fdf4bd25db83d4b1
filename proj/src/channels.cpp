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

#include "qdenoise/channels.hpp"

#include <cmath>
#include <string>

#include "qdenoise/linalg.hpp"
#include "qdenoise/pauli.hpp"

namespace qdenoise::channels {

using pauli::kron;
using pauli::pauli_matrix;

namespace {

const Complex kI(0.0, 1.0);

DenseOperator rz(double theta) {
  DenseOperator m = DenseOperator::Zero(2, 2);
  m(0, 0) = std::exp(-kI * (theta / 2));
  m(1, 1) = std::exp(kI * (theta / 2));
  return m;
}

DenseOperator ry(double theta) {
  const double c = std::cos(theta / 2), s = std::sin(theta / 2);
  DenseOperator m(2, 2);
  m << c, -s, s, c;
  return m;
}

DenseOperator zz_rotation(double alpha) {
  DenseOperator m = DenseOperator::Zero(4, 4);
  m(0, 0) = std::exp(-kI * alpha);
  m(1, 1) = std::exp(kI * alpha);
  m(2, 2) = std::exp(kI * alpha);
  m(3, 3) = std::exp(-kI * alpha);
  return m;
}

// d(K (x) conj(K)) = dK (x) conj(K) + K (x) conj(dK).
Matrix superop_derivative(const DenseOperator& k, const DenseOperator& dk) {
  return kron(dk, k.conjugate()) + kron(k, dk.conjugate());
}

DenseOperator ket(const DenseOperator& v, int column) {
  return v.col(column);
}

struct MeasurementJet {
  Matrix value;
  std::array<Matrix, 9> derivatives;  // kappa_1, kappa_2, kappa_3
};

// Correlated measurement M (x) M with Kraus set {K_l (x) K_m}.
MeasurementJet correlated_measurement_jet(const MeasurePrepParams& params,
                                          bool with_derivatives) {
  const DenseOperator v1 = one_qubit_unitary(params.kappa_1);
  const DenseOperator v2 = one_qubit_unitary(params.kappa_2);
  const DenseOperator v3 = one_qubit_unitary(params.kappa_3);
  const DenseOperator psi1 = ket(v1, 0), psi2 = ket(v2, 0);
  const DenseOperator psi = ket(v3, 0), psibar = ket(v3, 1);
  const std::array<DenseOperator, 2> k = {psi1 * psi.adjoint(),
                                          psi2 * psibar.adjoint()};

  MeasurementJet jet;
  jet.value = Matrix::Zero(16, 16);
  std::array<DenseOperator, 4> pair;
  for (int l = 0; l < 2; ++l) {
    for (int m = 0; m < 2; ++m) {
      pair[2 * l + m] = kron(k[l], k[m]);
      jet.value += kron(pair[2 * l + m], pair[2 * l + m].conjugate());
    }
  }
  if (!with_derivatives) return jet;

  const auto d1 = one_qubit_unitary_derivatives(params.kappa_1);
  const auto d2 = one_qubit_unitary_derivatives(params.kappa_2);
  const auto d3 = one_qubit_unitary_derivatives(params.kappa_3);
  for (int c = 0; c < 9; ++c) {
    std::array<DenseOperator, 2> dk = {DenseOperator::Zero(2, 2),
                                       DenseOperator::Zero(2, 2)};
    const int which = c / 3, comp = c % 3;
    if (which == 0) {
      dk[0] = ket(d1[comp], 0) * psi.adjoint();
    } else if (which == 1) {
      dk[1] = ket(d2[comp], 0) * psibar.adjoint();
    } else {
      dk[0] = psi1 * ket(d3[comp], 0).adjoint();
      dk[1] = psi2 * ket(d3[comp], 1).adjoint();
    }
    Matrix acc = Matrix::Zero(16, 16);
    for (int l = 0; l < 2; ++l) {
      for (int m = 0; m < 2; ++m) {
        const DenseOperator dpair = kron(dk[l], k[m]) + kron(k[l], dk[m]);
        acc += superop_derivative(pair[2 * l + m], dpair);
      }
    }
    jet.derivatives[c] = std::move(acc);
  }
  return jet;
}

}  // namespace

std::array<double, ChannelParams::kNumParams> ChannelParams::to_array() const {
  std::array<double, kNumParams> a{};
  int n = 0;
  a[n++] = eta1;
  a[n++] = unitary.alpha;
  for (double x : unitary.kappa_a) a[n++] = x;
  for (double x : unitary.kappa_c) a[n++] = x;
  for (double x : measure.kappa_1) a[n++] = x;
  for (double x : measure.kappa_2) a[n++] = x;
  for (double x : measure.kappa_3) a[n++] = x;
  return a;
}

ChannelParams ChannelParams::from_array(std::span<const double> values) {
  if (values.size() != kNumParams) {
    throw InvalidArgument("ChannelParams: expected 17 values, got " +
                          std::to_string(values.size()));
  }
  ChannelParams p;
  int n = 0;
  p.eta1 = values[n++];
  p.unitary.alpha = values[n++];
  for (double& x : p.unitary.kappa_a) x = values[n++];
  for (double& x : p.unitary.kappa_c) x = values[n++];
  for (double& x : p.measure.kappa_1) x = values[n++];
  for (double& x : p.measure.kappa_2) x = values[n++];
  for (double& x : p.measure.kappa_3) x = values[n++];
  return p;
}

NoiseModel::NoiseModel(double p) : p_(p) {
  if (!(p >= 0.0 && p <= kMaxProbability)) {
    throw InvalidArgument("NoiseModel: depolarizing probability must lie in "
                          "[0, 15/16], got " +
                          std::to_string(p));
  }
}

DenseOperator one_qubit_unitary(const Angles3& kappa) {
  return rz(kappa[0]) * ry(kappa[1]) * rz(kappa[2]);
}

std::array<DenseOperator, 3> one_qubit_unitary_derivatives(
    const Angles3& kappa) {
  const DenseOperator a = rz(kappa[0]), b = ry(kappa[1]), c = rz(kappa[2]);
  const DenseOperator half_z = -0.5 * kI * pauli_matrix(3);
  const DenseOperator half_y = -0.5 * kI * pauli_matrix(2);
  return {half_z * a * b * c, a * half_y * b * c, a * b * half_z * c};
}

DenseOperator zz_dressed_unitary(const UnitaryParams& params) {
  const DenseOperator a = one_qubit_unitary(params.kappa_a);
  const DenseOperator c = one_qubit_unitary(params.kappa_c);
  return kron(a, a) * zz_rotation(params.alpha) * kron(c, c);
}

std::array<DenseOperator, 2> measure_prepare_kraus(
    const MeasurePrepParams& params) {
  const DenseOperator v3 = one_qubit_unitary(params.kappa_3);
  const DenseOperator psi1 = ket(one_qubit_unitary(params.kappa_1), 0);
  const DenseOperator psi2 = ket(one_qubit_unitary(params.kappa_2), 0);
  return {psi1 * ket(v3, 0).adjoint(), psi2 * ket(v3, 1).adjoint()};
}

DenseSuperoperator measure_prepare_channel(const MeasurePrepParams& params) {
  const auto k = measure_prepare_kraus(params);
  return pauli::kraus_superop(k);
}

Matrix correlated_measurement_local(const MeasurePrepParams& params) {
  return correlated_measurement_jet(params, false).value;
}

Matrix depolarizing_local(const NoiseModel& noise) {
  const double p = noise.p();
  Matrix s = (1.0 - 16.0 * p / 15.0) * Matrix::Identity(16, 16);
  if (p == 0.0) return s;
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      const DenseOperator pp = kron(pauli_matrix(a), pauli_matrix(b));
      s += (p / 15.0) * kron(pp, pp.conjugate());
    }
  }
  return s;
}

DenseSuperoperator depolarizing_channel(const NoiseModel& noise, int num_sites,
                                        int site) {
  if (num_sites < 2 || site < 0 || site >= num_sites) {
    throw InvalidArgument("depolarizing_channel: site " +
                          std::to_string(site) + " out of range for L=" +
                          std::to_string(num_sites));
  }
  const std::array<int, 2> sites = {site, (site + 1) % num_sites};
  return pauli::embed_superop(depolarizing_local(noise), sites, num_sites);
}

Matrix unitary_branch_local(const ChannelParams& params,
                            const NoiseModel& noise) {
  return depolarizing_local(noise) *
         pauli::unitary_superop(zz_dressed_unitary(params.unitary));
}

Matrix measurement_branch_local(const ChannelParams& params,
                                const NoiseModel& noise) {
  return depolarizing_local(noise) *
         correlated_measurement_local(params.measure);
}

Matrix denoiser_local(const ChannelParams& params, const NoiseModel& noise) {
  const Matrix u = pauli::unitary_superop(zz_dressed_unitary(params.unitary));
  const Matrix m = correlated_measurement_local(params.measure);
  return depolarizing_local(noise) * (params.eta0() * u + params.eta1 * m);
}

LocalChannelJet denoiser_local_jet(const ChannelParams& params,
                                   const NoiseModel& noise) {
  const Matrix n = depolarizing_local(noise);
  const UnitaryParams& up = params.unitary;

  const DenseOperator a = one_qubit_unitary(up.kappa_a);
  const DenseOperator c = one_qubit_unitary(up.kappa_c);
  const DenseOperator aa = kron(a, a), cc = kron(c, c);
  const DenseOperator z = zz_rotation(up.alpha);
  const DenseOperator u = aa * z * cc;
  const Matrix u_super = kron(u, u.conjugate());

  const MeasurementJet meas = correlated_measurement_jet(params.measure, true);

  LocalChannelJet jet;
  jet.value = n * (params.eta0() * u_super + params.eta1 * meas.value);
  jet.derivatives[0] = n * (meas.value - u_super);

  // Unitary part: alpha, kappa_a, kappa_c.
  std::array<DenseOperator, 7> du;
  const DenseOperator zz = kron(pauli_matrix(3), pauli_matrix(3));
  du[0] = aa * (-kI * zz * z) * cc;
  const auto da = one_qubit_unitary_derivatives(up.kappa_a);
  const auto dc = one_qubit_unitary_derivatives(up.kappa_c);
  for (int m = 0; m < 3; ++m) {
    du[1 + m] = (kron(da[m], a) + kron(a, da[m])) * z * cc;
    du[4 + m] = aa * z * (kron(dc[m], c) + kron(c, dc[m]));
  }
  for (int m = 0; m < 7; ++m) {
    jet.derivatives[1 + m] = params.eta0() * (n * superop_derivative(u, du[m]));
  }
  for (int m = 0; m < 9; ++m) {
    jet.derivatives[8 + m] = params.eta1 * (n * meas.derivatives[m]);
  }
  return jet;
}

DenseSuperoperator denoiser_channel(const ChannelParams& params,
                                    const NoiseModel& noise, int num_sites,
                                    int site) {
  if (num_sites < 2 || site < 0 || site >= num_sites) {
    throw InvalidArgument("denoiser_channel: site " + std::to_string(site) +
                          " out of range for L=" + std::to_string(num_sites));
  }
  const std::array<int, 2> sites = {site, (site + 1) % num_sites};
  return pauli::embed_superop(denoiser_local(params, noise), sites, num_sites);
}

double gamma_of(const ChannelParams& params) {
  return std::abs(params.eta0()) + std::abs(params.eta1);
}

CptpReport check_cptp(const DenseSuperoperator& s) {
  const pauli::ChoiState choi = pauli::choi_reshape(s);
  const RealVector w = linalg::hermitian_eigenvalues(choi.state);
  return {pauli::trace_preservation_error(s), w.minCoeff()};
}

}  // namespace qdenoise::channels
