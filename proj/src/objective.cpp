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

#include "qdenoise/objective.hpp"

#include <cmath>
#include <string>

#include "qdenoise/channels.hpp"
#include "qdenoise/kernels.hpp"
#include "qdenoise/pauli.hpp"

namespace qdenoise::optimizer {

namespace {

// Moves the value of site q to site perm[q] in an L-bit basis index.
long permute_bits(long index, const std::vector<int>& perm, int num_sites) {
  long out = 0;
  for (int q = 0; q < num_sites; ++q) {
    if ((index >> (num_sites - 1 - q)) & 1) {
      out |= 1L << (num_sites - 1 - perm[q]);
    }
  }
  return out;
}

std::vector<std::vector<int>> site_symmetries(int num_sites) {
  std::vector<std::vector<int>> group;
  for (int shift = 0; shift < num_sites; shift += 2) {
    for (int reflect = 0; reflect < 2; ++reflect) {
      std::vector<int> perm(num_sites);
      for (int q = 0; q < num_sites; ++q) {
        const int r = reflect ? ((1 - q) % num_sites + num_sites) % num_sites : q;
        perm[q] = (r + shift) % num_sites;
      }
      group.push_back(std::move(perm));
    }
  }
  return group;
}

}  // namespace

ColumnSet all_columns(QubitCount L) {
  ColumnSet set;
  set.columns.resize(L.superop_dim());
  for (long k = 0; k < L.superop_dim(); ++k) set.columns[k] = k;
  set.weights = RealVector::Ones(L.superop_dim());
  return set;
}

ColumnSet symmetric_column_orbits(QubitCount L) {
  const long dim = L.hilbert_dim();
  const auto group = site_symmetries(L);
  std::vector<char> seen(L.superop_dim(), 0);
  ColumnSet set;
  std::vector<double> weights;
  for (long k = 0; k < L.superop_dim(); ++k) {
    if (seen[k]) continue;
    const long i = k / dim, j = k % dim;
    long size = 0;
    for (const auto& perm : group) {
      const long pi = permute_bits(i, perm, L), pj = permute_bits(j, perm, L);
      for (long image : {pi * dim + pj, pj * dim + pi}) {
        if (!seen[image]) {
          seen[image] = 1;
          ++size;
        }
      }
    }
    set.columns.push_back(k);
    weights.push_back(static_cast<double>(size));
  }
  set.weights = Eigen::Map<RealVector>(weights.data(), weights.size());
  return set;
}

namespace {

Matrix unit_columns(const ColumnSet& columns, long dim) {
  Matrix block = Matrix::Zero(dim, columns.columns.size());
  for (size_t c = 0; c < columns.columns.size(); ++c) {
    block(columns.columns[c], c) = 1.0;
  }
  return block;
}

}  // namespace

DenoisingObjective::DenoisingObjective(const DenseSuperoperator& target,
                                       const GateList& noisy, QubitCount L)
    : L_(L), columns_(all_columns(L)) {
  if (target.rows() != L.superop_dim() || target.cols() != L.superop_dim()) {
    throw InvalidArgument("DenoisingObjective: target must be 4^L x 4^L");
  }
  target_ = target;
  noisy_ = circuits::compose(noisy, L);
}

DenoisingObjective::DenoisingObjective(Matrix target_columns,
                                       const GateList& noisy,
                                       ColumnSet columns, QubitCount L)
    : L_(L), columns_(std::move(columns)), target_(std::move(target_columns)) {
  const long k = num_columns();
  if (columns_.weights.size() != k || target_.cols() != k ||
      target_.rows() != L.superop_dim()) {
    throw InvalidArgument("DenoisingObjective: column set and target disagree");
  }
  for (long c : columns_.columns) {
    if (c < 0 || c >= L.superop_dim()) {
      throw InvalidArgument("DenoisingObjective: column index out of range");
    }
  }
  noisy_ = unit_columns(columns_, L.superop_dim());
  circuits::apply_columns(noisy, noisy_, L);
}

DenoisingObjective DenoisingObjective::for_trotter(const TrotterSpec& spec,
                                                   bool use_symmetry) {
  spec.validate();
  const QubitCount L = spec.L;
  ColumnSet columns = use_symmetry ? symmetric_column_orbits(L) : all_columns(L);
  const DenseOperator u = circuits::trotter_unitary(spec);
  const long dim = L.hilbert_dim();
  Matrix target(L.superop_dim(), columns.columns.size());
  for (size_t c = 0; c < columns.columns.size(); ++c) {
    const long b = columns.columns[c] / dim, d = columns.columns[c] % dim;
    for (long a = 0; a < dim; ++a) {
      target.col(c).segment(a * dim, dim) = u(a, b) * u.col(d).conjugate();
    }
  }
  return DenoisingObjective(std::move(target),
                            circuits::build_trotter(spec, true),
                            std::move(columns), L);
}

void DenoisingObjective::check(const DenoiserSpec& denoiser) const {
  denoiser.validate();
  if (denoiser.L != L_) {
    throw InvalidArgument("DenoisingObjective: denoiser has L=" +
                          std::to_string(denoiser.L.value()) +
                          ", objective has L=" + std::to_string(L_.value()));
  }
}

double DenoisingObjective::weighted_norm(const Matrix& residual) const {
  const RealVector col_norms = residual.colwise().squaredNorm().transpose();
  return col_norms.dot(columns_.weights) /
         static_cast<double>(L_.superop_dim());
}

double DenoisingObjective::baseline() const {
  return weighted_norm(noisy_ - target_);
}

double DenoisingObjective::epsilon(const DenoiserSpec& denoiser) const {
  check(denoiser);
  Matrix f = noisy_;
  circuits::apply_columns(circuits::build_denoiser(denoiser), f, L_);
  f -= target_;
  return weighted_norm(f);
}

double DenoisingObjective::epsilon_and_gradient(
    const DenoiserSpec& denoiser, std::vector<double>& gradient) const {
  check(denoiser);
  constexpr int n = channels::ChannelParams::kNumParams;
  gradient.assign(denoiser.num_params(), 0.0);

  std::vector<channels::LocalChannelJet> jets;
  jets.reserve(denoiser.layers.size());
  for (const auto& layer : denoiser.layers) {
    jets.push_back(channels::denoiser_local_jet(layer, denoiser.noise));
  }

  struct Step {
    int layer;
    kernels::Placement placement;
  };
  std::vector<Step> steps;
  for (size_t h = 0; h < denoiser.layers.size(); ++h) {
    for (int site : circuits::half_layer_sites(L_, static_cast<int>(h % 2))) {
      const int sites[2] = {site, (site + 1) % L_};
      steps.push_back({static_cast<int>(h),
                       kernels::Placement(kernels::superop_positions(sites, L_),
                                          2 * L_)});
    }
  }

  // forward[k] is the state before step k; forward[steps.size()] the final
  // state. Buffers are reused across calls on the same thread.
  thread_local std::vector<Matrix> forward;
  thread_local Matrix lambda;
  if (forward.size() < steps.size() + 1) forward.resize(steps.size() + 1);
  forward[0] = noisy_;
  for (size_t k = 0; k < steps.size(); ++k) {
    forward[k + 1] = forward[k];
    kernels::apply_rows(jets[steps[k].layer].value, steps[k].placement,
                        forward[k + 1]);
  }

  lambda = forward[steps.size()] - target_;
  const double eps = weighted_norm(lambda);
  lambda = lambda * columns_.weights.cast<Complex>().asDiagonal();

  const double scale = 2.0 / static_cast<double>(L_.superop_dim());
  for (size_t k = steps.size(); k-- > 0;) {
    const Step& s = steps[k];
    const auto& jet = jets[s.layer];
    const Matrix env = kernels::environment(lambda, forward[k], s.placement);
    for (int p = 0; p < n; ++p) {
      gradient[s.layer * n + p] +=
          scale * (env.conjugate().cwiseProduct(jet.derivatives[p])).sum().real();
    }
    if (k > 0) {
      kernels::apply_rows(jet.value.adjoint(), s.placement, lambda);
    }
  }
  return eps;
}

double epsilon(const DenseSuperoperator& target, const DenoiserSpec& denoiser,
               const GateList& noisy_circuit) {
  denoiser.validate();
  const QubitCount L = denoiser.L;
  if (target.rows() != L.superop_dim() || target.cols() != L.superop_dim()) {
    throw InvalidArgument("epsilon: target shape does not match denoiser L");
  }
  DenseSuperoperator s = circuits::compose(noisy_circuit, L);
  circuits::apply_columns(circuits::build_denoiser(denoiser), s, L);
  return (target - s).squaredNorm() / static_cast<double>(L.superop_dim());
}

std::vector<double> epsilon_gradient(const DenoiserSpec& denoiser,
                                     const DenoisingObjective& objective) {
  std::vector<double> g;
  objective.epsilon_and_gradient(denoiser, g);
  return g;
}

}  // namespace qdenoise::optimizer
