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

#include <array>
#include <span>
#include <vector>

#include "qdenoise/types.hpp"

// Channel constructors: two-qubit depolarizing noise, the ZZ-dressed unitary,
// the one-qubit measure/prepare channel and the quasiprobability ansatz
//
//   G = N * (eta0 * U(phi) + eta1 * M(zeta) (x) M(zeta)),  eta0 = 1 - eta1.
//
// Functions with a `_local` suffix return the two-site superoperator in the
// local row-major convention (16 x 16); the others embed it into L sites.

namespace qdenoise::channels {

using Angles3 = std::array<double, 3>;

struct UnitaryParams {
  double alpha = 0.0;
  Angles3 kappa_a{};  // outer dressing, applied after the ZZ rotation
  Angles3 kappa_c{};  // inner dressing, applied before the ZZ rotation
};

struct MeasurePrepParams {
  Angles3 kappa_1{};  // state prepared after outcome psi
  Angles3 kappa_2{};  // state prepared after outcome psi-bar
  Angles3 kappa_3{};  // measurement basis {V|0>, V|1>}
};

struct ChannelParams {
  static constexpr int kNumParams = 17;

  double eta1 = 0.0;
  UnitaryParams unitary;
  MeasurePrepParams measure;

  double eta0() const { return 1.0 - eta1; }

  /// Flat order: eta1, alpha, kappa_a[3], kappa_c[3], kappa_1[3],
  /// kappa_2[3], kappa_3[3].
  std::array<double, kNumParams> to_array() const;
  static ChannelParams from_array(std::span<const double> values);

  /// Identity-gate parameters: eta1 = 0 and all angles zero.
  static ChannelParams identity() { return {}; }
};

class NoiseModel {
 public:
  static constexpr double kMaxProbability = 15.0 / 16.0;

  explicit NoiseModel(double p = 0.0);
  double p() const { return p_; }

 private:
  double p_;
};

/// V(kappa) = Rz(kappa_0) Ry(kappa_1) Rz(kappa_2).
DenseOperator one_qubit_unitary(const Angles3& kappa);
std::array<DenseOperator, 3> one_qubit_unitary_derivatives(
    const Angles3& kappa);

/// (A (x) A) exp(-i alpha Z(x)Z) (C (x) C) with A = V(kappa_a), C = V(kappa_c).
DenseOperator zz_dressed_unitary(const UnitaryParams& params);

/// K1 = |psi_1><psi|, K2 = |psi_2><psi-bar|.
std::array<DenseOperator, 2> measure_prepare_kraus(
    const MeasurePrepParams& params);

/// One-qubit measure/prepare superoperator (4 x 4).
DenseSuperoperator measure_prepare_channel(const MeasurePrepParams& params);

/// Two-qubit correlated measurement M (x) M as a 16 x 16 superoperator.
Matrix correlated_measurement_local(const MeasurePrepParams& params);

Matrix depolarizing_local(const NoiseModel& noise);

/// Depolarizing channel on the bond (site, site + 1 mod L).
DenseSuperoperator depolarizing_channel(const NoiseModel& noise, int num_sites,
                                        int site);

/// Noisy unitary branch N * U(phi).
Matrix unitary_branch_local(const ChannelParams& params,
                            const NoiseModel& noise);
/// Noisy measurement branch N * (M (x) M).
Matrix measurement_branch_local(const ChannelParams& params,
                                const NoiseModel& noise);

Matrix denoiser_local(const ChannelParams& params, const NoiseModel& noise);

/// Value and the derivative with respect to each of the 17 flat parameters.
struct LocalChannelJet {
  Matrix value;
  std::array<Matrix, ChannelParams::kNumParams> derivatives;
};
LocalChannelJet denoiser_local_jet(const ChannelParams& params,
                                   const NoiseModel& noise);

DenseSuperoperator denoiser_channel(const ChannelParams& params,
                                    const NoiseModel& noise, int num_sites,
                                    int site);

/// Sampling overhead |eta0| + |eta1|.
double gamma_of(const ChannelParams& params);

struct CptpReport {
  double trace_error;          // trace_preservation_error
  double min_choi_eigenvalue;  // of the unit-trace Choi state
};
CptpReport check_cptp(const DenseSuperoperator& s);

}  // namespace qdenoise::channels
