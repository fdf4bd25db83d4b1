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

#include "qdenoise/circuits.hpp"

#include <cmath>
#include <string>

#include "qdenoise/kernels.hpp"
#include "qdenoise/pauli.hpp"

namespace qdenoise::circuits {

using pauli::kron;
using pauli::pauli_matrix;

void TrotterSpec::validate() const {
  if (m_trot < 1) {
    throw InvalidArgument("TrotterSpec: m_trot must be >= 1, got " +
                          std::to_string(m_trot));
  }
  if (!std::isfinite(t)) throw InvalidArgument("TrotterSpec: t not finite");
}

void DenoiserSpec::validate() const {
  if (depth < 0) throw InvalidArgument("DenoiserSpec: negative depth");
  if (layers.size() != static_cast<size_t>(2 * depth)) {
    throw InvalidArgument("DenoiserSpec: depth " + std::to_string(depth) +
                          " needs " + std::to_string(2 * depth) +
                          " channel parameter sets, got " +
                          std::to_string(layers.size()));
  }
}

DenoiserSpec DenoiserSpec::identity(QubitCount L, int depth, NoiseModel noise) {
  if (depth < 0) throw InvalidArgument("DenoiserSpec: negative depth");
  return DenoiserSpec{L, depth,
                      std::vector<ChannelParams>(2 * depth,
                                                 ChannelParams::identity()),
                      noise};
}

std::vector<double> DenoiserSpec::flat_params() const {
  std::vector<double> out;
  out.reserve(num_params());
  for (const auto& layer : layers) {
    const auto a = layer.to_array();
    out.insert(out.end(), a.begin(), a.end());
  }
  return out;
}

void DenoiserSpec::set_flat_params(std::span<const double> values) {
  if (values.size() != static_cast<size_t>(num_params())) {
    throw InvalidArgument("DenoiserSpec: expected " +
                          std::to_string(num_params()) + " parameters, got " +
                          std::to_string(values.size()));
  }
  constexpr int n = ChannelParams::kNumParams;
  for (size_t h = 0; h < layers.size(); ++h) {
    layers[h] = ChannelParams::from_array(values.subspan(h * n, n));
  }
}

std::vector<int> Gate::sites(int num_sites) const {
  std::vector<int> s(arity);
  for (int k = 0; k < arity; ++k) s[k] = (site + k) % num_sites;
  return s;
}

DenseOperator bond_hamiltonian(const Couplings& couplings) {
  const double j[3] = {couplings.jx, couplings.jy, couplings.jz};
  DenseOperator h = DenseOperator::Zero(4, 4);
  for (int a = 1; a <= 3; ++a) {
    h += j[a - 1] * kron(pauli_matrix(a), pauli_matrix(a));
  }
  return h;
}

DenseOperator heisenberg_hamiltonian(QubitCount L, const Couplings& couplings) {
  const DenseOperator hb = bond_hamiltonian(couplings);
  DenseOperator h = DenseOperator::Zero(L.hilbert_dim(), L.hilbert_dim());
  for (int i = 0; i < L; ++i) h += pauli::embed_local(hb, i, L);
  return h;
}

namespace {

DenseOperator hermitian_exp(const DenseOperator& h, double t) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
  const Eigen::VectorXcd phases =
      (es.eigenvalues().cast<Complex>() * Complex(0.0, -t)).array().exp();
  return es.eigenvectors() * phases.asDiagonal() *
         es.eigenvectors().adjoint();
}

}  // namespace

DenseOperator exact_propagator(QubitCount L, const Couplings& couplings,
                               double t) {
  return hermitian_exp(heisenberg_hamiltonian(L, couplings), t);
}

DenseOperator bond_gate(const Couplings& couplings, double dt) {
  return hermitian_exp(bond_hamiltonian(couplings), dt);
}

std::vector<int> half_layer_sites(QubitCount L, int parity) {
  std::vector<int> sites;
  for (int s = parity % 2; s < L; s += 2) sites.push_back(s);
  return sites;
}

double trotter_layer_step(const TrotterSpec& spec, int k) {
  const bool end_layer = (k == 0 || k == spec.m_trot);
  return (end_layer ? 1.0 : 2.0) * spec.t / spec.m_trot;
}

GateList build_trotter(const TrotterSpec& spec, bool noisy) {
  spec.validate();
  const Matrix noise = channels::depolarizing_local(spec.noise);
  GateList gates;
  gates.reserve((spec.m_trot + 1) * (spec.L / 2));
  for (int k = 0; k <= spec.m_trot; ++k) {
    const DenseOperator g = bond_gate(spec.couplings, trotter_layer_step(spec, k));
    Matrix superop = pauli::unitary_superop(g);
    if (noisy) superop = noise * superop;
    for (int site : half_layer_sites(spec.L, k % 2)) {
      gates.push_back(Gate{superop, site, 2, k});
    }
  }
  return gates;
}

DenseOperator trotter_unitary(const TrotterSpec& spec) {
  spec.validate();
  DenseOperator u = pauli::identity(spec.L.hilbert_dim());
  for (int k = 0; k <= spec.m_trot; ++k) {
    const DenseOperator g = bond_gate(spec.couplings, trotter_layer_step(spec, k));
    for (int site : half_layer_sites(spec.L, k % 2)) {
      u = pauli::embed_local(g, site, spec.L) * u;
    }
  }
  return u;
}

GateList build_denoiser(const DenoiserSpec& spec) {
  spec.validate();
  GateList gates;
  gates.reserve(spec.layers.size() * (spec.L / 2));
  for (size_t h = 0; h < spec.layers.size(); ++h) {
    const Matrix local = channels::denoiser_local(spec.layers[h], spec.noise);
    for (int site : half_layer_sites(spec.L, static_cast<int>(h % 2))) {
      gates.push_back(Gate{local, site, 2, static_cast<int>(h)});
    }
  }
  return gates;
}

namespace {

kernels::Placement placement_for(const Gate& gate, int num_sites) {
  if (gate.arity < 1 || gate.arity > num_sites) {
    throw InvalidArgument("gate arity " + std::to_string(gate.arity) +
                          " invalid for L=" + std::to_string(num_sites));
  }
  if (gate.site < 0 || gate.site >= num_sites) {
    throw InvalidArgument("gate site " + std::to_string(gate.site) +
                          " out of range for L=" + std::to_string(num_sites));
  }
  const auto sites = gate.sites(num_sites);
  return kernels::Placement(kernels::superop_positions(sites, num_sites),
                            2 * num_sites);
}

}  // namespace

DenseSuperoperator compose(const GateList& gates, QubitCount L) {
  if (L > kMaxDenseSites) {
    throw InvalidArgument("compose: dense composition limited to L <= " +
                          std::to_string(kMaxDenseSites) + ", got L=" +
                          std::to_string(L.value()));
  }
  DenseSuperoperator s =
      DenseSuperoperator::Identity(L.superop_dim(), L.superop_dim());
  apply_columns(gates, s, L);
  return s;
}

VectorizedOperator apply(const GateList& gates, const VectorizedOperator& v,
                         QubitCount L) {
  VectorizedOperator out = v;
  for (const Gate& g : gates) {
    kernels::apply_vector(g.superop, placement_for(g, L), out);
  }
  return out;
}

void apply_columns(const GateList& gates, Matrix& block, QubitCount L) {
  for (const Gate& g : gates) {
    kernels::apply_rows(g.superop, placement_for(g, L), block);
  }
}

GateList stack(const GateList& gates, int n) {
  if (n < 1) throw InvalidArgument("stack: n must be >= 1");
  GateList out;
  out.reserve(gates.size() * n);
  for (int k = 0; k < n; ++k) out.insert(out.end(), gates.begin(), gates.end());
  return out;
}

GateList concat(const GateList& first, const GateList& second) {
  GateList out = first;
  out.insert(out.end(), second.begin(), second.end());
  return out;
}

}  // namespace qdenoise::circuits
