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

#include "qdenoise/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qdenoise/circuits.hpp"
#include "qdenoise/linalg.hpp"
#include "qdenoise/pauli.hpp"

namespace qdenoise::analysis {

namespace {

int sites_of(const DenseSuperoperator& s, const char* what) {
  if (s.rows() != s.cols()) {
    throw InvalidArgument(std::string(what) + ": superoperator must be square");
  }
  const int bits = pauli::qubits_for_dim(s.rows());
  if (bits % 2 != 0) {
    throw InvalidArgument(std::string(what) + ": dimension is not 4^L");
  }
  const int num_sites = bits / 2;
  if (num_sites > circuits::kMaxDenseSites) {
    throw InvalidArgument(std::string(what) + ": limited to L <= " +
                          std::to_string(circuits::kMaxDenseSites));
  }
  return num_sites;
}

}  // namespace

SpectrumReport spectrum(const DenseSuperoperator& s) {
  sites_of(s, "spectrum");
  SpectrumReport report;
  report.eigenvalues = linalg::eigenvalues(s);
  std::stable_sort(report.eigenvalues.begin(), report.eigenvalues.end(),
                   [](Complex a, Complex b) { return std::abs(a) > std::abs(b); });
  double dev = 0.0;
  for (Complex l : report.eigenvalues) dev += std::abs(std::abs(l) - 1.0);
  report.mean_unit_circle_deviation =
      dev / static_cast<double>(report.eigenvalues.size());
  report.spectral_radius =
      report.eigenvalues.empty() ? 0.0 : std::abs(report.eigenvalues.front());
  return report;
}

UnitCircleComparison unit_circle_metrics(const SpectrumReport& noisy,
                                         const SpectrumReport& denoiser,
                                         const SpectrumReport& denoised) {
  if (noisy.eigenvalues.size() != denoiser.eigenvalues.size() ||
      noisy.eigenvalues.size() != denoised.eigenvalues.size()) {
    throw InvalidArgument("unit_circle_metrics: spectra of different size");
  }
  UnitCircleComparison c;
  c.noisy_deviation = noisy.mean_unit_circle_deviation;
  c.denoiser_deviation = denoiser.mean_unit_circle_deviation;
  c.denoised_deviation = denoised.mean_unit_circle_deviation;
  c.denoiser_radius = denoiser.spectral_radius;
  c.denoiser_outside_unit_circle = denoiser.spectral_radius > 1.0;
  c.denoised_closer_than_noisy = c.denoised_deviation < c.noisy_deviation;
  return c;
}

double clipped_entropy(const RealVector& eigenvalues, double* clipped) {
  double pos = 0.0, neg = 0.0;
  for (double l : eigenvalues) (l > 0.0 ? pos : neg) += std::abs(l);
  if (clipped) *clipped += neg;
  if (pos == 0.0) return 0.0;
  double s = 0.0;
  for (double l : eigenvalues) {
    if (l > 0.0) s -= (l / pos) * std::log(l / pos);
  }
  return s;
}

Matrix reduce_choi(const Matrix& choi, int num_sites, int cut) {
  if (cut < 0 || cut > num_sites) {
    throw InvalidArgument("reduce_choi: cut out of range");
  }
  const long d = 1L << num_sites;
  if (choi.rows() != d * d || choi.cols() != d * d) {
    throw InvalidArgument("reduce_choi: shape does not match L");
  }
  const int rest = num_sites - cut;
  const long da = 1L << cut, db = 1L << rest;
  // Row index (out, in) with out = outA * db + outB, likewise for in.
  auto index = [&](long oa, long ob, long ia, long ib) {
    return (oa * db + ob) * d + (ia * db + ib);
  };
  Matrix reduced = Matrix::Zero(da * da, da * da);
  for (long oa = 0; oa < da; ++oa) {
    for (long ia = 0; ia < da; ++ia) {
      for (long oa2 = 0; oa2 < da; ++oa2) {
        for (long ia2 = 0; ia2 < da; ++ia2) {
          Complex acc = 0.0;
          for (long ob = 0; ob < db; ++ob) {
            for (long ib = 0; ib < db; ++ib) {
              acc += choi(index(oa, ob, ia, ib), index(oa2, ob, ia2, ib));
            }
          }
          reduced(oa * da + ia, oa2 * da + ia2) = acc;
        }
      }
    }
  }
  return reduced;
}

EntropyReport channel_entropy(const DenseSuperoperator& s, int cut) {
  const int num_sites = sites_of(s, "channel_entropy");
  if (cut < 0) cut = num_sites / 2;
  const pauli::ChoiState choi = pauli::choi_reshape(s);
  EntropyReport report;
  const RealVector full = linalg::hermitian_eigenvalues(choi.state);
  report.min_eigenvalue = full.size() ? full.minCoeff() : 0.0;
  report.positive_semidefinite = report.min_eigenvalue >= -kPsdTolerance;
  report.full_choi_entropy = clipped_entropy(full, &report.clipped_weight);
  const Matrix reduced = reduce_choi(choi.state, num_sites, cut);
  report.half_chain_entropy =
      clipped_entropy(linalg::hermitian_eigenvalues(reduced));
  return report;
}

}  // namespace qdenoise::analysis
