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

#include "qdenoise/kernels.hpp"

#include <algorithm>
#include <string>

namespace qdenoise::kernels {

Placement::Placement(std::span<const int> positions, int total_bits)
    : total_bits_(total_bits) {
  const int k = static_cast<int>(positions.size());
  if (k == 0 || k > total_bits || total_bits > 62) {
    throw InvalidArgument("Placement: bad arity " + std::to_string(k) +
                          " for " + std::to_string(total_bits) + " bits");
  }
  std::vector<long> weights(k);
  for (int t = 0; t < k; ++t) {
    const int pos = positions[t];
    if (pos < 0 || pos >= total_bits) {
      throw InvalidArgument("Placement: bit position " + std::to_string(pos) +
                            " out of range");
    }
    weights[t] = 1L << (total_bits - 1 - pos);
  }
  sorted_weights_ = weights;
  std::sort(sorted_weights_.begin(), sorted_weights_.end());
  if (std::adjacent_find(sorted_weights_.begin(), sorted_weights_.end()) !=
      sorted_weights_.end()) {
    throw InvalidArgument("Placement: repeated bit position");
  }
  offsets_.assign(1L << k, 0);
  for (long m = 0; m < (1L << k); ++m) {
    long off = 0;
    for (int t = 0; t < k; ++t) {
      if ((m >> (k - 1 - t)) & 1) off += weights[t];
    }
    offsets_[m] = off;
  }
}

std::vector<int> superop_positions(std::span<const int> sites, int num_sites) {
  std::vector<int> pos;
  pos.reserve(2 * sites.size());
  for (int s : sites) pos.push_back(s);
  for (int s : sites) pos.push_back(num_sites + s);
  return pos;
}

namespace {

void check_local(const Matrix& local, const Placement& placement) {
  if (local.rows() != placement.local_dim() ||
      local.cols() != placement.local_dim()) {
    throw InvalidArgument("kernel: local matrix is " +
                          std::to_string(local.rows()) + "x" +
                          std::to_string(local.cols()) + ", placement needs " +
                          std::to_string(placement.local_dim()));
  }
}

template <int Dim>
void apply_vector_fixed(const Matrix& local, const Placement& placement,
                        Vector& v) {
  const Eigen::Matrix<Complex, Dim, Dim, Eigen::RowMajor> g = local;
  const auto& off = placement.offsets();
  Eigen::Matrix<Complex, Dim, 1> in, out;
  const long nb = placement.num_bases();
  for (long k = 0; k < nb; ++k) {
    const long b = placement.base(k);
    for (int m = 0; m < Dim; ++m) in[m] = v[b + off[m]];
    out.noalias() = g * in;
    for (int m = 0; m < Dim; ++m) v[b + off[m]] = out[m];
  }
}

}  // namespace

void apply_rows(const Matrix& local, const Placement& placement,
                Matrix& target) {
  check_local(local, placement);
  if (target.rows() != placement.full_dim()) {
    throw InvalidArgument("apply_rows: target has " +
                          std::to_string(target.rows()) + " rows, expected " +
                          std::to_string(placement.full_dim()));
  }
  const int d = placement.local_dim();
  const auto& off = placement.offsets();
  const long ncols = target.cols();
  Matrix in(d, ncols), out(d, ncols);
  const long nb = placement.num_bases();
  for (long k = 0; k < nb; ++k) {
    const long b = placement.base(k);
    for (int m = 0; m < d; ++m) in.row(m) = target.row(b + off[m]);
    out.noalias() = local * in;
    for (int m = 0; m < d; ++m) target.row(b + off[m]) = out.row(m);
  }
}

void apply_vector(const Matrix& local, const Placement& placement, Vector& v) {
  check_local(local, placement);
  if (v.size() != placement.full_dim()) {
    throw InvalidArgument("apply_vector: vector length " +
                          std::to_string(v.size()) + ", expected " +
                          std::to_string(placement.full_dim()));
  }
  switch (placement.local_dim()) {
    case 4:
      apply_vector_fixed<4>(local, placement, v);
      return;
    case 16:
      apply_vector_fixed<16>(local, placement, v);
      return;
    default: {
      const int d = placement.local_dim();
      const auto& off = placement.offsets();
      Vector in(d), out(d);
      for (long k = 0; k < placement.num_bases(); ++k) {
        const long b = placement.base(k);
        for (int m = 0; m < d; ++m) in[m] = v[b + off[m]];
        out.noalias() = local * in;
        for (int m = 0; m < d; ++m) v[b + off[m]] = out[m];
      }
    }
  }
}

Matrix environment(const Matrix& lambda, const Matrix& forward,
                   const Placement& placement) {
  if (lambda.rows() != placement.full_dim() ||
      forward.rows() != placement.full_dim() ||
      lambda.cols() != forward.cols()) {
    throw InvalidArgument("environment: shape mismatch");
  }
  const int d = placement.local_dim();
  const auto& off = placement.offsets();
  const long ncols = lambda.cols();
  Matrix env = Matrix::Zero(d, d);
  Matrix lb(d, ncols), fb(d, ncols);
  for (long k = 0; k < placement.num_bases(); ++k) {
    const long b = placement.base(k);
    for (int m = 0; m < d; ++m) {
      lb.row(m) = lambda.row(b + off[m]);
      fb.row(m) = forward.row(b + off[m]);
    }
    env.noalias() += lb * fb.adjoint();
  }
  return env;
}

}  // namespace qdenoise::kernels
